#pragma once

#include <cstdint>

namespace etss {

// Small deterministic generator (splitmix64 core). Dealers take a seed and
// must replay the same share stream on every platform, so the standard
// distributions are avoided on purpose.
class SymbolRng {
 public:
  explicit SymbolRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform symbol in [0, p) by rejection.
  std::uint32_t symbol(std::uint32_t p) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % p;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return std::uint32_t(v % p);
  }

 private:
  std::uint64_t state_;
};

}  // namespace etss
