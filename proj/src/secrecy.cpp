#include "etss/secrecy.hpp"

#include <algorithm>
#include <unordered_map>

namespace etss {

namespace {

// Tallies switch to a hash map above this many observable tuples.
constexpr std::uint64_t kFlatTallyLimit = std::uint64_t(1) << 22;

struct EnumSetup {
  std::uint32_t p = 2;
  std::uint32_t k = 2;
  std::size_t n_max = 0;
  std::uint64_t states = 1;      // p^((k-1)*n_max)
  std::uint64_t observable = 1;  // p^(sum of member truncations)
  std::vector<std::size_t> lens;
  // powers[m][j] = y_m^j mod x^(lens[m]) as raw coefficients
  std::vector<std::vector<std::vector<std::uint32_t>>> powers;
  // base[m] = s*y_m^(k-1) mod x^(lens[m])
  std::vector<std::vector<std::uint32_t>> base;
};

std::uint64_t checked_pow(std::uint32_t p, std::size_t e, std::uint64_t cap,
                          bool* overflow) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (v > cap / p) {
      *overflow = true;
      return 0;
    }
    v *= p;
  }
  *overflow = false;
  return v;
}

EnumSetup prepare(const SchemeParams& params, const Secret& s,
                  std::span<const std::uint64_t> coalition, std::uint64_t budget) {
  params.validate();
  if (s.modulus() != params.p || s.length() != params.ell)
    fail(ErrorCode::ParamMismatch, "secret disagrees with scheme parameters");
  if (coalition.size() >= params.k)
    fail(ErrorCode::ParamMismatch, "coalition of size >= k is qualified");
  for (std::size_t i = 0; i < coalition.size(); ++i) {
    for (std::size_t j = i + 1; j < coalition.size(); ++j) {
      if (coalition[i] == coalition[j])
        fail(ErrorCode::DuplicateParticipant, "coalition indices must be distinct");
    }
  }

  EnumSetup setup;
  setup.p = params.p;
  setup.k = params.k;
  for (std::uint64_t t : coalition) {
    if (!params.codec.covers(t))
      fail(ErrorCode::CodecMiss, "codec has no codeword for " + std::to_string(t));
    const Codeword cw = params.codec.encode(t);
    const std::size_t n = share_truncation(params.k, params.ell, cw.length());
    setup.n_max = std::max(setup.n_max, n);
    setup.lens.push_back(n);

    const TruncatedPoly y = cw.to_poly().zero_extended(n);
    std::vector<std::vector<std::uint32_t>> pw;
    TruncatedPoly acc = TruncatedPoly::constant(params.p, 1, n);
    for (std::uint32_t j = 0; j < params.k; ++j) {
      pw.push_back(acc.coeffs());
      if (j + 1 < params.k) acc = acc * y;
    }
    setup.base.push_back((s.poly().zero_extended(n) *
                          TruncatedPoly(params.p, pw.back()))
                             .coeffs());
    pw.pop_back();  // keep y^0..y^(k-2); the top power lives in base
    setup.powers.push_back(std::move(pw));
  }

  const std::size_t digits = std::size_t(params.k - 1) * setup.n_max;
  bool overflow = false;
  setup.states = checked_pow(params.p, digits, budget, &overflow);
  if (overflow || setup.states > budget)
    fail(ErrorCode::BudgetExceeded,
         "enumeration needs p^" + std::to_string(digits) + " states (budget " +
             std::to_string(budget) + ")");
  std::size_t obs_digits = 0;
  for (std::size_t n : setup.lens) obs_digits += n;
  setup.observable = checked_pow(params.p, obs_digits, setup.states, &overflow);
  return setup;
}

// Walks all randomness assignments with a mixed-radix odometer; each digit
// increment adds one precomputed delta polynomial to each member's share,
// so a step is O(coalition * N) instead of a full re-evaluation.
template <typename Visit>
void enumerate_states(const EnumSetup& setup, Visit&& visit) {
  const std::uint32_t p = setup.p;
  const std::size_t members = setup.lens.size();
  std::vector<std::vector<std::uint32_t>> z = setup.base;

  auto pack = [&]() {
    std::uint64_t key = 0;
    std::uint64_t radix = 1;
    for (std::size_t m = 0; m < members; ++m) {
      const auto& zm = z[m];
      for (std::size_t i = 0; i < zm.size(); ++i) {
        key += zm[i] * radix;
        radix *= p;
      }
    }
    return key;
  };

  const std::size_t digits = std::size_t(setup.k - 1) * setup.n_max;
  std::vector<std::uint32_t> digit(digits, 0);

  visit(pack());
  for (std::uint64_t state = 1; state < setup.states; ++state) {
    std::size_t g = 0;
    for (;;) {
      const std::size_t j = g / setup.n_max;
      const std::size_t d = g % setup.n_max;
      for (std::size_t m = 0; m < members; ++m) {
        auto& zm = z[m];
        if (d >= zm.size()) continue;
        const auto& yj = setup.powers[m][j];
        for (std::size_t i = d; i < zm.size(); ++i)
          zm[i] = mod_add(zm[i], yj[i - d], p);
      }
      if (++digit[g] == p) {
        digit[g] = 0;
        ++g;
      } else {
        break;
      }
    }
    visit(pack());
  }
}

}  // namespace

std::uint64_t ShareDistribution::total() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& [key, count] : counts_) sum += count;
  return sum;
}

std::map<std::vector<std::string>, std::uint64_t> ShareDistribution::as_map() const {
  std::map<std::vector<std::string>, std::uint64_t> out;
  for (const auto& [key, count] : counts_) {
    std::uint64_t rest = key;
    std::vector<std::string> tuple;
    tuple.reserve(lens_.size());
    for (std::size_t n : lens_) {
      std::vector<std::uint32_t> symbols(n);
      for (std::size_t i = 0; i < n; ++i) {
        symbols[i] = std::uint32_t(rest % p_);
        rest /= p_;
      }
      tuple.push_back(format_symbols(p_, symbols));
    }
    out.emplace(std::move(tuple), count);
  }
  return out;
}

ShareDistribution enumerate_distribution(const SchemeParams& params, const Secret& s,
                                         std::span<const std::uint64_t> coalition,
                                         std::uint64_t budget) {
  const EnumSetup setup = prepare(params, s, coalition, budget);

  ShareDistribution dist;
  dist.p_ = params.p;
  dist.lens_ = setup.lens;

  if (setup.observable <= kFlatTallyLimit) {
    std::vector<std::uint64_t> tally(std::size_t(setup.observable), 0);
    enumerate_states(setup, [&tally](std::uint64_t key) { ++tally[std::size_t(key)]; });
    for (std::uint64_t key = 0; key < setup.observable; ++key) {
      if (tally[std::size_t(key)] != 0) dist.counts_.emplace_back(key, tally[std::size_t(key)]);
    }
  } else {
    std::unordered_map<std::uint64_t, std::uint64_t> tally;
    enumerate_states(setup, [&tally](std::uint64_t key) { ++tally[key]; });
    dist.counts_.assign(tally.begin(), tally.end());
    std::sort(dist.counts_.begin(), dist.counts_.end());
  }
  return dist;
}

bool check_secrecy(const SchemeParams& params, const Secret& s0, const Secret& s1,
                   std::span<const std::uint64_t> coalition, std::uint64_t budget) {
  if (s0 == s1) return true;
  const ShareDistribution d0 = enumerate_distribution(params, s0, coalition, budget);
  const ShareDistribution d1 = enumerate_distribution(params, s1, coalition, budget);
  return d0 == d1;
}

std::uint64_t count_solutions(const SchemeParams& params,
                              std::span<const std::uint64_t> coalition,
                              std::span<const std::string> tuple, const Secret& s,
                              std::uint64_t budget) {
  const EnumSetup setup = prepare(params, s, coalition, budget);
  if (tuple.size() != coalition.size())
    fail(ErrorCode::ParamMismatch, "need one digit string per coalition member");

  std::uint64_t target = 0;
  std::uint64_t radix = 1;
  for (std::size_t m = 0; m < tuple.size(); ++m) {
    const auto symbols = parse_symbols(params.p, tuple[m]);
    if (symbols.size() != setup.lens[m])
      fail(ErrorCode::ParamMismatch,
           "tuple entry " + std::to_string(m) + " has the wrong share length");
    for (std::uint32_t sym : symbols) {
      target += sym * radix;
      radix *= params.p;
    }
  }

  std::uint64_t hits = 0;
  enumerate_states(setup, [&hits, target](std::uint64_t key) {
    if (key == target) ++hits;
  });
  return hits;
}

SymmetricShift shift_vector(const Secret& s0, const Secret& s1,
                            std::span<const TruncatedPoly> ys, std::size_t n) {
  if (ys.empty()) fail(ErrorCode::ParamMismatch, "need at least one codeword polynomial");
  if (n < 1) fail(ErrorCode::InvalidTruncation, "truncation must be positive");
  const std::uint32_t p = s0.modulus();
  if (s1.modulus() != p || s0.length() != s1.length())
    fail(ErrorCode::ParamMismatch, "secrets disagree in modulus or length");

  auto at = [n](const TruncatedPoly& f) {
    return f.truncation() >= n ? f.truncated(n) : f.zero_extended(n);
  };
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (ys[i].modulus() != p) fail(ErrorCode::ParamMismatch, "mixed moduli");
    for (std::size_t j = i + 1; j < ys.size(); ++j) {
      const std::size_t m = std::max(ys[i].truncation(), ys[j].truncation());
      if (ys[i].zero_extended(m) == ys[j].zero_extended(m))
        fail(ErrorCode::DegenerateCodewords, "coalition polynomials coincide");
    }
  }

  const std::size_t c = ys.size();
  const TruncatedPoly diff = at(s0.poly()) - at(s1.poly());

  // Elementary symmetric polynomials sigma_0..sigma_c of the ys.
  std::vector<TruncatedPoly> sigma(c + 1, TruncatedPoly::zero(p, n));
  sigma[0] = TruncatedPoly::constant(p, 1, n);
  for (std::size_t m = 0; m < c; ++m) {
    const TruncatedPoly y = at(ys[m]);
    for (std::size_t i = m + 1; i >= 1; --i) sigma[i] = sigma[i] + sigma[i - 1] * y;
  }

  SymmetricShift shift;
  shift.r.reserve(c);
  for (std::size_t j = 0; j < c; ++j) {
    TruncatedPoly rj = diff * sigma[c - j];
    if ((c - 1 - j) % 2 == 1) rj = rj.negated();
    shift.r.push_back(std::move(rj));
  }
  return shift;
}

std::string secrecy_csv(const ShareDistribution& d0, const ShareDistribution& d1) {
  if (d0.p_ != d1.p_ || d0.lens_ != d1.lens_)
    fail(ErrorCode::ParamMismatch, "distributions observe different coalitions");
  std::string out = "tuple,count_s0,count_s1\n";
  const auto m0 = d0.as_map();
  const auto m1 = d1.as_map();
  std::map<std::vector<std::string>, std::pair<std::uint64_t, std::uint64_t>> merged;
  for (const auto& [tuple, c] : m0) merged[tuple].first = c;
  for (const auto& [tuple, c] : m1) merged[tuple].second = c;
  for (const auto& [tuple, counts] : merged) {
    std::string joined;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      if (i > 0) joined.push_back('|');
      joined += tuple[i];
    }
    out += joined + "," + std::to_string(counts.first) + "," +
           std::to_string(counts.second) + "\n";
  }
  return out;
}

}  // namespace etss
