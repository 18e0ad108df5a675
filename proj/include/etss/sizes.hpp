#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "etss/prefix_code.hpp"

namespace etss {

// Share size of participant t in symbols over F_p: (k-1)(len_t - 1) + ell,
// with len_t the codec's closed-form codeword length. Always equals the
// truncation of an actually issued share.
std::uint64_t share_size(const Codec& codec, std::uint64_t t, std::uint32_t k,
                         std::uint32_t ell);

// Sign of the gamma-minus-delta share-size difference
// f(t) = floor(lg t) - 2*floor(lg(floor(lg t)+1)); delta wins (Positive)
// exactly for t >= 32.
enum class SizeOrder { Negative, Zero, Positive };
SizeOrder compare_gamma_delta(std::uint64_t t);

// CSV of share sizes, one row per (k, t, codec) in that order. When
// bits_per_symbol is true, sizes are scaled by ceil(lg p) for display.
std::string emit_table(std::span<const std::uint32_t> k_values,
                       std::span<const std::uint64_t> t_values, std::uint32_t ell,
                       std::span<const Codec> codecs, bool bits_per_symbol = false);

}  // namespace etss
