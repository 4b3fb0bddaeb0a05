#pragma once

// FFT-order coefficient helpers: slot k holds mode l = k for k < n/2 and
// l = k - n for k >= n/2.

#include <algorithm>
#include <cstddef>
#include <span>

#include "nlse/fft.hpp"

namespace nlse::layout {

/// Copies the n coefficients of src into dst (length m >= n), zero elsewhere.
inline void pad(std::span<const fft::cplx> src, std::span<fft::cplx> dst) {
    const std::size_t n = src.size();
    const std::size_t m = dst.size();
    const std::size_t half = n / 2;
    std::fill(dst.begin(), dst.end(), fft::cplx{});
    std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(half), dst.begin());
    std::copy(src.begin() + static_cast<std::ptrdiff_t>(half), src.end(),
              dst.begin() + static_cast<std::ptrdiff_t>(m - (n - half)));
}

/// Keeps the modes of src (length m) that lie in T_n, n = dst.size() <= m.
inline void truncate(std::span<const fft::cplx> src, std::span<fft::cplx> dst) {
    const std::size_t n = dst.size();
    const std::size_t half = n / 2;
    std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(half), dst.begin());
    std::copy(src.end() - static_cast<std::ptrdiff_t>(n - half), src.end(),
              dst.begin() + static_cast<std::ptrdiff_t>(half));
}

/// Signed mode number of FFT slot k in a length-n layout.
inline long mode_of_slot(std::size_t k, std::size_t n) {
    return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

}  // namespace nlse::layout
