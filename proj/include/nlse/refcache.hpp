#pragma once

// Binary snapshot format shared by the reference cache and `solve` output:
//
//   64-byte ASCII header  "NLSEREF <version> <N> <a> <b> <T> <scheme> <tau>",
//                         space padded, last byte '\n'
//   2N little-endian float64 values, (re, im) interleaved, l = -N/2 .. N/2-1
//   32-byte SHA-256 of everything before it

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "nlse/grid.hpp"

namespace nlse {

inline constexpr std::size_t kSnapshotHeaderBytes = 64;
inline constexpr int kSnapshotVersion = 1;

struct SnapshotHeader {
    int version = kSnapshotVersion;
    long modes = 0;
    double a = 0.0;
    double b = 0.0;
    double T = 0.0;
    std::string scheme;
    double tau = 0.0;

    /// Fixed-width encoding; throws ConfigError if the fields do not fit.
    std::string encode() const;
    static SnapshotHeader decode(std::string_view bytes);
    bool operator==(const SnapshotHeader&) const = default;
};

struct Snapshot {
    SnapshotHeader header;
    SpectralField field;
};

/// Encodes a snapshot into its on-disk byte string.
std::string encode_snapshot(const SnapshotHeader& header, const SpectralField& field);
/// Inverse of encode_snapshot; throws CacheError on any inconsistency.
Snapshot decode_snapshot(std::string_view bytes);

/// Writes through a temporary file and an atomic rename.
void write_snapshot(const std::filesystem::path& path, const SnapshotHeader& header, const SpectralField& field);
Snapshot read_snapshot(const std::filesystem::path& path);

std::string sha256_hex(std::string_view data);

}  // namespace nlse
