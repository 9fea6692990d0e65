#pragma once

#include <cstdint>

namespace blotto::rng {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t absorb(std::uint64_t h, std::uint64_t x) {
  return mix64(h + kGolden * (x + 1));
}

// Keyed counter stream. Every word is a pure function of (seed, tag, counters),
// so draws can be replayed or partitioned across workers without shared state.
struct Key {
  std::uint64_t v;
};

constexpr Key derive(std::uint64_t seed, std::uint64_t tag) {
  return Key{absorb(absorb(kGolden, seed), tag)};
}

constexpr std::uint64_t word(Key k, std::uint64_t i) { return absorb(k.v, i); }
constexpr std::uint64_t word(Key k, std::uint64_t i, std::uint64_t j) {
  return absorb(absorb(k.v, i), j);
}
constexpr std::uint64_t word(Key k, std::uint64_t i, std::uint64_t j, std::uint64_t l) {
  return absorb(absorb(absorb(k.v, i), j), l);
}

constexpr double to_unit(std::uint64_t w) {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

constexpr double unit(Key k, std::uint64_t i) { return to_unit(word(k, i)); }
constexpr double unit(Key k, std::uint64_t i, std::uint64_t j) {
  return to_unit(word(k, i, j));
}
constexpr double unit(Key k, std::uint64_t i, std::uint64_t j, std::uint64_t l) {
  return to_unit(word(k, i, j, l));
}

// Maps a word onto [0, bound) without modulo bias worth caring about.
constexpr std::uint32_t below(std::uint64_t w, std::uint32_t bound) {
  return static_cast<std::uint32_t>(
      (static_cast<unsigned __int128>(w) * bound) >> 64);
}

}  // namespace blotto::rng
