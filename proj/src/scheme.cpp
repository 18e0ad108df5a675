#include "etss/scheme.hpp"

#include <algorithm>
#include <charconv>

#include "linear_solve.hpp"

namespace etss {

namespace {

// Zero-extend or truncate to exactly n coefficients. Extension is exact for
// codeword polynomials and secrets (they are genuinely finite); truncation
// is plain reduction mod x^n.
TruncatedPoly fit(const TruncatedPoly& f, std::size_t n) {
  if (f.truncation() == n) return f;
  return f.truncation() < n ? f.zero_extended(n) : f.truncated(n);
}

void validate_group(std::span<const Share> shares) {
  if (shares.empty()) fail(ErrorCode::NotEnoughShares, "no shares given");
  const ShareParams& head = shares.front().params;
  if (head.k < 2 || head.ell < 1) fail(ErrorCode::ParamMismatch, "bad share header");
  const std::uint32_t k = head.k;
  if (shares.size() < k) fail(ErrorCode::NotEnoughShares, "need exactly k shares");
  if (shares.size() > k)
    fail(ErrorCode::TooManyShares, "need exactly k shares; pick a k-subset");
  for (const Share& sh : shares) {
    if (!(sh.params == head)) fail(ErrorCode::ParamMismatch, "share headers differ");
    if (sh.codeword.p != head.p || sh.z.modulus() != head.p)
      fail(ErrorCode::ParamMismatch, "share symbols disagree with header modulus");
    if (sh.t < 1) fail(ErrorCode::ParamMismatch, "participant indices start at 1");
    if (sh.z.truncation() != share_truncation(head.k, head.ell, sh.codeword.length()))
      fail(ErrorCode::ParamMismatch, "share truncation violates the size law");
  }
  for (std::size_t i = 0; i < shares.size(); ++i) {
    for (std::size_t j = i + 1; j < shares.size(); ++j) {
      if (shares[i].t == shares[j].t)
        fail(ErrorCode::DuplicateParticipant,
             "participant " + std::to_string(shares[i].t) + " appears twice");
    }
  }
}

std::vector<const Share*> sorted_by_index(std::span<const Share> shares) {
  std::vector<const Share*> out;
  out.reserve(shares.size());
  for (const Share& sh : shares) out.push_back(&sh);
  std::sort(out.begin(), out.end(),
            [](const Share* a, const Share* b) { return a->t < b->t; });
  return out;
}

// Powers y^0..y^max_pow at truncation n; exact because deg(y^j) < n for
// every share-law truncation.
std::vector<TruncatedPoly> codeword_powers(const Codeword& cw, std::size_t n,
                                           std::uint32_t max_pow) {
  const TruncatedPoly y = fit(cw.to_poly(), n);
  std::vector<TruncatedPoly> pw;
  pw.reserve(max_pow + 1);
  pw.push_back(TruncatedPoly::constant(y.modulus(), 1, n));
  for (std::uint32_t j = 1; j <= max_pow; ++j) pw.push_back(pw.back() * y);
  return pw;
}

}  // namespace

void SchemeParams::validate() const {
  check_modulus(p);
  if (k < 2) fail(ErrorCode::ParamMismatch, "threshold must be at least 2");
  if (ell < 1) fail(ErrorCode::ParamMismatch, "secret length must be positive");
  if (codec.alphabet() != p)
    fail(ErrorCode::ParamMismatch, "codec alphabet disagrees with modulus");
}

std::string format_share_record(const Share& share) {
  std::string out = "ETSS1";
  out += " p=" + std::to_string(share.params.p);
  out += " k=" + std::to_string(share.params.k);
  out += " l=" + std::to_string(share.params.ell);
  out += " code=" + share.params.codec_name;
  out += " t=" + std::to_string(share.t);
  out += " cw=" + share.codeword.digits();
  out += " z=" + share.z.digits();
  return out;
}

namespace {

std::uint64_t parse_u64_field(std::string_view text, const char* what) {
  std::uint64_t v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    fail(ErrorCode::BadRecord, std::string("bad ") + what + " field");
  return v;
}

std::string_view expect_field(std::string_view& rest, std::string_view key) {
  if (rest.substr(0, key.size()) != key)
    fail(ErrorCode::BadRecord, "expected field " + std::string(key));
  rest.remove_prefix(key.size());
  const auto space = rest.find(' ');
  std::string_view value = rest.substr(0, space);
  rest.remove_prefix(space == std::string_view::npos ? rest.size() : space + 1);
  if (value.empty()) fail(ErrorCode::BadRecord, "empty field " + std::string(key));
  return value;
}

}  // namespace

Share parse_share_record(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  std::string_view rest = line;
  if (rest.substr(0, 6) != "ETSS1 ") fail(ErrorCode::BadRecord, "missing ETSS1 magic");
  rest.remove_prefix(6);

  // cw/z digit strings may contain spaces for p > 10, so cut those two
  // fields off the tail first.
  const auto zpos = rest.rfind(" z=");
  if (zpos == std::string_view::npos) fail(ErrorCode::BadRecord, "missing z field");
  const std::string_view zdigits = rest.substr(zpos + 3);
  rest = rest.substr(0, zpos);
  const auto cwpos = rest.rfind(" cw=");
  if (cwpos == std::string_view::npos) fail(ErrorCode::BadRecord, "missing cw field");
  const std::string_view cwdigits = rest.substr(cwpos + 4);
  rest = rest.substr(0, cwpos + 1);

  const std::uint64_t p = parse_u64_field(expect_field(rest, "p="), "p");
  const std::uint64_t k = parse_u64_field(expect_field(rest, "k="), "k");
  const std::uint64_t ell = parse_u64_field(expect_field(rest, "l="), "l");
  const std::string codec_name{expect_field(rest, "code=")};
  const std::uint64_t t = parse_u64_field(expect_field(rest, "t="), "t");
  if (!rest.empty()) fail(ErrorCode::BadRecord, "trailing fields");

  if (p < 2 || p > kMaxModulus) fail(ErrorCode::BadRecord, "modulus out of range");
  if (k < 2 || k > 64) fail(ErrorCode::BadRecord, "threshold out of range");
  if (ell < 1) fail(ErrorCode::BadRecord, "secret length out of range");
  if (t < 1) fail(ErrorCode::BadRecord, "participant index out of range");
  if (codec_name != "gamma" && codec_name != "delta" && codec_name != "m1" &&
      codec_name != "m2" && codec_name != "custom")
    fail(ErrorCode::BadRecord, "unknown codec name");

  try {
    Codeword cw{std::uint32_t(p), parse_symbols(std::uint32_t(p), cwdigits)};
    TruncatedPoly z = TruncatedPoly::from_digits(std::uint32_t(p), zdigits);
    if (z.truncation() !=
        share_truncation(std::uint32_t(k), std::uint32_t(ell), cw.length()))
      fail(ErrorCode::BadRecord, "share length violates the size law");
    return Share{ShareParams{std::uint32_t(p), std::uint32_t(k), std::uint32_t(ell),
                             codec_name},
                 t, std::move(cw), std::move(z)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadRecord) throw;
    fail(ErrorCode::BadRecord, e.what());
  }
}

Secret reconstruct(std::span<const Share> shares) {
  validate_group(shares);
  const auto order = sorted_by_index(shares);
  const std::uint32_t p = order[0]->params.p;
  const std::uint32_t k = order[0]->params.k;
  const std::uint32_t ell = order[0]->params.ell;

  std::vector<TruncatedPoly> ys;
  ys.reserve(k);
  for (const Share* sh : order) ys.push_back(sh->codeword.to_poly());

  // Pairwise valuations of codeword differences; the shorter polynomial is
  // zero-extended before subtracting.
  std::vector<std::vector<std::size_t>> lval(k, std::vector<std::size_t>(k, 0));
  std::size_t sum_l = 0;
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = u + 1; v < k; ++v) {
      const std::size_t n = std::max(ys[u].truncation(), ys[v].truncation());
      const TruncatedPoly diff = fit(ys[u], n) - fit(ys[v], n);
      if (diff.is_zero())
        fail(ErrorCode::DegenerateCodewords, "two shares carry the same codeword");
      lval[u][v] = diff.valuation();
      sum_l += lval[u][v];
    }
  }

  // alpha = min_m { N_m + sum of pairwise valuations not involving m }.
  std::size_t alpha = SIZE_MAX;
  for (std::size_t m = 0; m < k; ++m) {
    std::size_t excl = sum_l;
    for (std::size_t u = 0; u < k; ++u) {
      if (u < m) excl -= lval[u][m];
      if (u > m) excl -= lval[m][u];
    }
    alpha = std::min(alpha, order[m]->z.truncation() + excl);
  }
  if (sum_l + ell > alpha)
    fail(ErrorCode::InternalInvariantViolation,
         "valuation bound violated; codec is not prefix-free");

  std::vector<std::vector<TruncatedPoly>> diff_at(
      k, std::vector<TruncatedPoly>(k, TruncatedPoly::zero(p, 1)));
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = u + 1; v < k; ++v) {
      diff_at[u][v] = fit(ys[u], alpha) - fit(ys[v], alpha);
    }
  }

  TruncatedPoly denominator = TruncatedPoly::constant(p, 1, alpha);
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = u + 1; v < k; ++v) denominator = denominator * diff_at[u][v];
  }

  // Shares of truncation below alpha are zero-extended: the cofactor in
  // front of Z_m has valuation >= alpha - N_m, so the fabricated
  // coefficients never reach below x^alpha.
  TruncatedPoly numerator = TruncatedPoly::zero(p, alpha);
  for (std::size_t m = 0; m < k; ++m) {
    TruncatedPoly cof = TruncatedPoly::constant(p, 1, alpha);
    for (std::size_t u = 0; u < k; ++u) {
      for (std::size_t v = u + 1; v < k; ++v) {
        if (u == m || v == m) continue;
        cof = cof * diff_at[u][v];
      }
    }
    TruncatedPoly term = cof * fit(order[m]->z, alpha);
    numerator = numerator + (m % 2 == 0 ? term : term.negated());
  }

  return Secret(solve_divide(denominator, numerator, alpha, ell));
}

Secret reconstruct_oracle(std::span<const Share> shares) {
  validate_group(shares);
  const auto order = sorted_by_index(shares);
  const std::uint32_t p = order[0]->params.p;
  const std::uint32_t k = order[0]->params.k;
  const std::uint32_t ell = order[0]->params.ell;

  std::size_t n_max = 0;
  for (const Share* sh : order) n_max = std::max(n_max, sh->z.truncation());

  const std::size_t r_vars = std::size_t(k - 1) * n_max;
  detail::GfSystem sys;
  sys.p = p;
  sys.cols = r_vars + ell;

  for (const Share* sh : order) {
    const auto pw = codeword_powers(sh->codeword, n_max, k - 1);
    const std::size_t n = sh->z.truncation();
    for (std::size_t d = 0; d < n; ++d) {
      std::vector<std::uint32_t> row(sys.cols, 0);
      for (std::uint32_t j = 0; j + 1 < k; ++j) {
        const auto& yj = pw[j].coeffs();
        for (std::size_t dd = 0; dd <= d; ++dd) row[j * n_max + dd] = yj[d - dd];
      }
      const auto& ytop = pw[k - 1].coeffs();
      for (std::size_t dd = 0; dd <= d && dd < ell; ++dd)
        row[r_vars + dd] = ytop[d - dd];
      sys.add_row(std::move(row), sh->z.coeff(d));
    }
  }

  const auto sol = detail::solve_gf_system(std::move(sys), [](std::size_t) { return 0u; });
  if (!sol.consistent)
    fail(ErrorCode::InconsistentShares, "share equations have no common solution");
  for (std::size_t d = 0; d < ell; ++d) {
    if (!sol.pinned[r_vars + d])
      fail(ErrorCode::InconsistentShares, "secret is not determined by these shares");
  }
  std::vector<std::uint32_t> s(sol.x.begin() + r_vars, sol.x.begin() + r_vars + ell);
  return Secret(TruncatedPoly(p, std::move(s)));
}

Dealer::Dealer(const SchemeParams& params, Secret secret)
    : params_(params), secret_(std::move(secret)) {
  params_.validate();
  if (secret_.modulus() != params_.p)
    fail(ErrorCode::ParamMismatch, "secret modulus disagrees with scheme modulus");
  if (secret_.length() != params_.ell)
    fail(ErrorCode::ParamMismatch, "secret length disagrees with scheme parameters");
  rs_.assign(params_.k - 1, {});
}

Dealer::Dealer(const SchemeParams& params, Secret secret, std::uint64_t seed)
    : Dealer(params, std::move(secret)) {
  rng_ = SymbolRng(seed);
}

Dealer Dealer::with_fixed_randomness(const SchemeParams& params, Secret secret,
                                     const std::vector<std::string>& r_digits) {
  Dealer dealer(params, std::move(secret));
  if (r_digits.size() != std::size_t(params.k - 1))
    fail(ErrorCode::ParamMismatch, "need one randomness string per r_j (k-1 total)");
  dealer.fixed_ = true;
  for (const std::string& digits : r_digits)
    dealer.fixed_rs_.push_back(parse_symbols(params.p, digits));
  return dealer;
}

void Dealer::extend_to(std::size_t n) {
  if (n <= extent_) return;
  for (std::size_t j = 0; j < rs_.size(); ++j) {
    if (fixed_) {
      if (fixed_rs_[j].size() < n)
        fail(ErrorCode::RandomnessExhausted,
             "fixed randomness r_" + std::to_string(j) + " is shorter than " +
                 std::to_string(n) + " symbols");
      rs_[j].assign(fixed_rs_[j].begin(), fixed_rs_[j].begin() + n);
    } else {
      rs_[j].reserve(n);
      for (std::size_t d = extent_; d < n; ++d) rs_[j].push_back(rng_.symbol(params_.p));
    }
  }
  extent_ = n;
}

TruncatedPoly Dealer::randomness(std::size_t j) const {
  if (j >= rs_.size()) fail(ErrorCode::OutOfDomain, "no such randomness polynomial");
  if (extent_ == 0) fail(ErrorCode::ZeroPolynomial, "no shares issued yet");
  return TruncatedPoly(params_.p, rs_[j]);
}

TruncatedPoly Dealer::share_polynomial(const Codeword& codeword, std::size_t n) const {
  if (codeword.p != params_.p)
    fail(ErrorCode::ParamMismatch, "codeword alphabet disagrees with scheme modulus");
  if (n > extent_)
    fail(ErrorCode::RandomnessExhausted, "randomness not extended this far");
  const TruncatedPoly y = fit(codeword.to_poly(), n);
  // Horner over the ring: ((s*y + r_{k-2})*y + ...)*y + r_0.
  TruncatedPoly acc = fit(secret_.poly(), n);
  for (std::size_t j = rs_.size(); j-- > 0;) {
    acc = acc * y + TruncatedPoly(params_.p,
                                  std::vector<std::uint32_t>(rs_[j].begin(),
                                                             rs_[j].begin() + n));
  }
  return acc;
}

bool Dealer::has_issued(std::uint64_t t) const {
  for (const Share& sh : issued_) {
    if (sh.t == t) return true;
  }
  return false;
}

Share Dealer::issue(std::uint64_t t) {
  if (t < 1) fail(ErrorCode::OutOfDomain, "participant indices start at 1");
  if (!params_.codec.covers(t))
    fail(ErrorCode::CodecMiss, "codec has no codeword for " + std::to_string(t));
  if (has_issued(t))
    fail(ErrorCode::DuplicateParticipant,
         "participant " + std::to_string(t) + " already holds a share");
  Codeword cw = params_.codec.encode(t);
  const std::size_t n = share_truncation(params_.k, params_.ell, cw.length());
  extend_to(n);
  TruncatedPoly z = share_polynomial(cw, n);
  Share share{ShareParams{params_.p, params_.k, params_.ell, params_.codec.name()}, t,
              std::move(cw), std::move(z)};
  issued_.push_back(share);
  return share;
}

Dealer Dealer::recover(const SchemeParams& params, std::span<const Share> shares,
                       std::uint64_t seed) {
  params.validate();
  validate_group(shares);
  const ShareParams& head = shares.front().params;
  if (head.p != params.p || head.k != params.k || head.ell != params.ell ||
      head.codec_name != params.codec.name())
    fail(ErrorCode::ParamMismatch, "share headers disagree with scheme parameters");
  for (const Share& sh : shares) {
    if (params.codec.covers(sh.t) && !(params.codec.encode(sh.t) == sh.codeword))
      fail(ErrorCode::ParamMismatch,
           "codeword of participant " + std::to_string(sh.t) +
               " disagrees with the codec");
  }

  Secret secret = reconstruct(shares);
  Dealer dealer(params, std::move(secret), seed);

  std::size_t n_max = 0;
  for (const Share& sh : shares) n_max = std::max(n_max, sh.z.truncation());

  // Solve the share equations for r_0..r_{k-2} given the secret. Any
  // solution reproduces all k given shares; coefficients the system leaves
  // free are drawn from the seeded generator.
  const std::uint32_t k = params.k;
  const std::size_t r_vars = std::size_t(k - 1) * n_max;
  detail::GfSystem sys;
  sys.p = params.p;
  sys.cols = r_vars;
  for (const Share& sh : shares) {
    const auto pw = codeword_powers(sh.codeword, n_max, k - 1);
    const std::size_t n = sh.z.truncation();
    const TruncatedPoly rhs_poly =
        sh.z - (fit(dealer.secret_.poly(), n_max) * pw[k - 1]).truncated(n);
    for (std::size_t d = 0; d < n; ++d) {
      std::vector<std::uint32_t> row(sys.cols, 0);
      for (std::uint32_t j = 0; j + 1 < k; ++j) {
        const auto& yj = pw[j].coeffs();
        for (std::size_t dd = 0; dd <= d; ++dd) row[j * n_max + dd] = yj[d - dd];
      }
      sys.add_row(std::move(row), rhs_poly.coeff(d));
    }
  }

  const auto sol = detail::solve_gf_system(
      std::move(sys), [&dealer](std::size_t) { return dealer.rng_.symbol(dealer.params_.p); });
  if (!sol.consistent)
    fail(ErrorCode::InconsistentShares, "shares were not issued by one dealer");

  for (std::uint32_t j = 0; j + 1 < k; ++j) {
    dealer.rs_[j].assign(sol.x.begin() + j * n_max, sol.x.begin() + (j + 1) * n_max);
  }
  dealer.extent_ = n_max;

  for (const Share& sh : shares) {
    if (dealer.share_polynomial(sh.codeword, sh.z.truncation()) != sh.z)
      fail(ErrorCode::InternalInvariantViolation,
           "recovered state fails to reproduce an input share");
    dealer.issued_.push_back(sh);
  }
  return dealer;
}

}  // namespace etss
