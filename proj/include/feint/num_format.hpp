#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace feint {

/// Shortest decimal representation that round-trips the double exactly.
/// Used for every number written to CSV/JSONL so golden files are stable.
inline std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

/// splitmix64 step; derives independent per-episode seeds from a base seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace feint
