#include "etss/sizes.hpp"

#include <algorithm>
#include <vector>

#include "etss/scheme.hpp"

namespace etss {

std::uint64_t share_size(const Codec& codec, std::uint64_t t, std::uint32_t k,
                         std::uint32_t ell) {
  if (t < 1) fail(ErrorCode::OutOfDomain, "t must be positive");
  if (k < 2 || ell < 1) fail(ErrorCode::ParamMismatch, "bad scheme parameters");
  return share_truncation(k, ell, codec.code_length(t));
}

SizeOrder compare_gamma_delta(std::uint64_t t) {
  if (t < 1) fail(ErrorCode::OutOfDomain, "t must be positive");
  const std::int64_t lg = floor_log(t, 2);
  const std::int64_t f = lg - 2 * std::int64_t(floor_log(std::uint64_t(lg) + 1, 2));
  if (f < 0) return SizeOrder::Negative;
  return f == 0 ? SizeOrder::Zero : SizeOrder::Positive;
}

std::string emit_table(std::span<const std::uint32_t> k_values,
                       std::span<const std::uint64_t> t_values, std::uint32_t ell,
                       std::span<const Codec> codecs, bool bits_per_symbol) {
  // rows ordered by k, then t, then codec name, independent of input order
  std::vector<std::uint32_t> ks(k_values.begin(), k_values.end());
  std::vector<std::uint64_t> ts(t_values.begin(), t_values.end());
  std::vector<Codec> cs(codecs.begin(), codecs.end());
  std::sort(ks.begin(), ks.end());
  std::sort(ts.begin(), ts.end());
  std::stable_sort(cs.begin(), cs.end(),
                   [](const Codec& a, const Codec& b) { return a.name() < b.name(); });

  std::string out = bits_per_symbol ? "k,t,codec,size_bits\n" : "k,t,codec,size\n";
  for (std::uint32_t k : ks) {
    for (std::uint64_t t : ts) {
      for (const Codec& codec : cs) {
        std::uint64_t size = share_size(codec, t, k, ell);
        if (bits_per_symbol) {
          const std::uint32_t p = codec.alphabet();
          std::uint32_t bits = 0;
          while ((std::uint64_t(1) << bits) < p) ++bits;  // ceil(lg p)
          size *= bits;
        }
        out += std::to_string(k) + "," + std::to_string(t) + "," + codec.name() +
               "," + std::to_string(size) + "\n";
      }
    }
  }
  return out;
}

}  // namespace etss
