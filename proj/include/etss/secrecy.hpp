#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "etss/scheme.hpp"

namespace etss {

// Enumeration ceiling, expressed as total randomness-space size so runs are
// deterministic across machines.
inline constexpr std::uint64_t kDefaultSecrecyBudget = std::uint64_t(1) << 24;

// Exact occurrence counts of every share tuple a coalition can observe,
// over the full randomness space. Counts always sum to p^((k-1)*N_max)
// where N_max is the largest share truncation in the coalition.
class ShareDistribution {
 public:
  std::uint64_t total() const noexcept;
  std::size_t support() const noexcept { return counts_.size(); }
  const std::vector<std::size_t>& member_truncations() const noexcept { return lens_; }

  // Tuple of per-member share digit strings -> count.
  std::map<std::vector<std::string>, std::uint64_t> as_map() const;

  bool operator==(const ShareDistribution& o) const noexcept {
    return p_ == o.p_ && lens_ == o.lens_ && counts_ == o.counts_;
  }

 private:
  friend ShareDistribution enumerate_distribution(const SchemeParams&, const Secret&,
                                                  std::span<const std::uint64_t>,
                                                  std::uint64_t);
  friend std::string secrecy_csv(const ShareDistribution&, const ShareDistribution&);

  std::uint32_t p_ = 2;
  std::vector<std::size_t> lens_;
  // (packed tuple, count), sorted by key; tuples pack member digits in
  // ascending position order, base p.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counts_;
};

// Iterates every assignment of r_0..r_{k-2} over F_p[x]/x^N_max, computes
// the coalition's share tuple and tallies. Coalitions of any unqualified
// size (0..k-1) are accepted.
ShareDistribution enumerate_distribution(const SchemeParams& params, const Secret& s,
                                         std::span<const std::uint64_t> coalition,
                                         std::uint64_t budget = kDefaultSecrecyBudget);

// Perfect-secrecy check for one coalition: the two secrets induce exactly
// the same tuple distribution.
bool check_secrecy(const SchemeParams& params, const Secret& s0, const Secret& s1,
                   std::span<const std::uint64_t> coalition,
                   std::uint64_t budget = kDefaultSecrecyBudget);

// Number of randomness assignments producing exactly the given tuple
// (one digit string per coalition member, in coalition order) under s.
std::uint64_t count_solutions(const SchemeParams& params,
                              std::span<const std::uint64_t> coalition,
                              std::span<const std::string> tuple, const Secret& s,
                              std::uint64_t budget = kDefaultSecrecyBudget);

// The closed-form randomness shift mapping solutions for s0 onto solutions
// for s1: r_j = (-1)^(c-1-j) (s0-s1) sigma_{c-j}(ys) with c = |ys| and
// sigma_i the elementary symmetric polynomials of the codeword polynomials.
struct SymmetricShift {
  std::vector<TruncatedPoly> r;
};

SymmetricShift shift_vector(const Secret& s0, const Secret& s1,
                            std::span<const TruncatedPoly> ys, std::size_t n);

// CSV with one row per observable tuple: tuple,count_s0,count_s1.
std::string secrecy_csv(const ShareDistribution& d0, const ShareDistribution& d1);

}  // namespace etss
