#pragma once

#include <stdexcept>
#include <string>

namespace nlse {

/// Invalid or inconsistent configuration (mismatched grids, bad keys, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NotImplementedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A time stepper produced a non-finite coefficient.
class BlowUpError : public std::runtime_error {
public:
    explicit BlowUpError(long step);
    long step() const noexcept { return step_; }

private:
    long step_;
};

/// Reference cache file is missing, truncated, or fails its checksum.
class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Too few usable points to fit a convergence order.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nlse
