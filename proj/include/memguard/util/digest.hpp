#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace memguard {

// FNV-1a, 64-bit. Used for content digests and to seed the deterministic
// mock embedder; stable across platforms and process restarts.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 14695981039346656037ull) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_hex(std::uint64_t value);

/// 16-hex-char digest of arbitrary text.
inline std::string digest_hex(std::string_view data) { return to_hex(fnv1a64(data)); }

/// 32-hex-char digest (two independent FNV streams) for cache keys where
/// collisions would silently corrupt results.
std::string digest_hex_wide(std::string_view data);

// splitmix64: tiny deterministic PRNG stream used by the mock embedder.
struct Splitmix64 {
    std::uint64_t state;

    explicit Splitmix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [-1, 1).
    double next_signed_unit() {
        return static_cast<double>(next() >> 11) * (2.0 / 9007199254740992.0) - 1.0;
    }
};

}  // namespace memguard
