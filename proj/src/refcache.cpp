#include "nlse/refcache.hpp"

#include <openssl/sha.h>

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "nlse/errors.hpp"
#include "text.hpp"

namespace nlse {

static_assert(std::endian::native == std::endian::little, "snapshot payload assumes a little-endian host");

namespace {

constexpr std::string_view kMagic = "NLSEREF";

std::array<unsigned char, SHA256_DIGEST_LENGTH> digest(std::string_view data) {
    std::array<unsigned char, SHA256_DIGEST_LENGTH> out{};
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), out.data());
    return out;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string s;
    for (unsigned char byte : digest(data)) {
        s += kHex[byte >> 4];
        s += kHex[byte & 0xF];
    }
    return s;
}

std::string SnapshotHeader::encode() const {
    std::string s = std::string(kMagic) + ' ' + std::to_string(version) + ' ' + std::to_string(modes) + ' ' +
                    text::shortest(a) + ' ' + text::shortest(b) + ' ' + text::shortest(T) + ' ' + scheme + ' ' + text::shortest(tau);
    if (s.size() > kSnapshotHeaderBytes - 1) throw ConfigError("snapshot header too long: " + s);
    s.resize(kSnapshotHeaderBytes - 1, ' ');
    s += '\n';
    return s;
}

SnapshotHeader SnapshotHeader::decode(std::string_view bytes) {
    if (bytes.size() != kSnapshotHeaderBytes || bytes.back() != '\n') throw CacheError("snapshot: malformed header");
    std::istringstream in{std::string(bytes)};
    std::string magic;
    SnapshotHeader h;
    if (!(in >> magic >> h.version >> h.modes >> h.a >> h.b >> h.T >> h.scheme >> h.tau) || magic != kMagic)
        throw CacheError("snapshot: unreadable header");
    if (h.version != kSnapshotVersion) throw CacheError("snapshot: unsupported version " + std::to_string(h.version));
    return h;
}

std::string encode_snapshot(const SnapshotHeader& header, const SpectralField& field) {
    if (header.modes != field.modes()) throw ConfigError("snapshot: header mode count does not match field");
    std::string bytes = header.encode();
    const auto coeffs = field.coeffs();
    const std::size_t payload = coeffs.size() * 2 * sizeof(double);
    const std::size_t offset = bytes.size();
    bytes.resize(offset + payload);
    std::memcpy(bytes.data() + offset, coeffs.data(), payload);
    const auto hash = digest(bytes);
    bytes.append(reinterpret_cast<const char*>(hash.data()), hash.size());
    return bytes;
}

Snapshot decode_snapshot(std::string_view bytes) {
    if (bytes.size() < kSnapshotHeaderBytes + SHA256_DIGEST_LENGTH) throw CacheError("snapshot: file truncated");
    const SnapshotHeader header = SnapshotHeader::decode(bytes.substr(0, kSnapshotHeaderBytes));
    if (header.modes < 4) throw CacheError("snapshot: bad mode count");
    const std::size_t payload = static_cast<std::size_t>(header.modes) * 2 * sizeof(double);
    if (bytes.size() != kSnapshotHeaderBytes + payload + SHA256_DIGEST_LENGTH)
        throw CacheError("snapshot: size does not match header");
    const auto body = bytes.substr(0, kSnapshotHeaderBytes + payload);
    const auto hash = digest(body);
    if (std::memcmp(hash.data(), bytes.data() + body.size(), hash.size()) != 0)
        throw CacheError("snapshot: checksum mismatch");

    std::vector<cplx> coeffs(static_cast<std::size_t>(header.modes));
    std::memcpy(coeffs.data(), bytes.data() + kSnapshotHeaderBytes, payload);
    try {
        PeriodicGrid grid(header.a, header.b, header.modes);
        return Snapshot{header, SpectralField(grid, std::move(coeffs))};
    } catch (const ConfigError& e) {
        throw CacheError(std::string("snapshot: ") + e.what());
    }
}

void write_snapshot(const std::filesystem::path& path, const SnapshotHeader& header, const SpectralField& field) {
    const std::string bytes = encode_snapshot(header, field);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());

    std::random_device rd;
    auto tmp = path;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw CacheError("snapshot: cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("snapshot: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return decode_snapshot(buf.str());
}

}  // namespace nlse
