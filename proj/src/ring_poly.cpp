#include "etss/ring_poly.hpp"

#include <atomic>
#include <sstream>

namespace etss {

namespace {

std::atomic<std::size_t> g_max_truncation{std::size_t(1) << 20};

// Schoolbook product of the first n coefficients. Terms are accumulated in
// 64 bits with a lazy reduction that keeps the running sum below 2^63, so
// any modulus up to kMaxModulus is safe.
std::vector<std::uint32_t> mul_truncated(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b,
                                         std::size_t n, std::uint32_t p) {
  std::vector<std::uint64_t> acc(n, 0);
  const std::size_t na = a.size() < n ? a.size() : n;
  constexpr std::uint64_t kSpill = std::uint64_t(1) << 63;
  for (std::size_t i = 0; i < na; ++i) {
    const std::uint64_t ai = a[i];
    if (ai == 0) continue;
    const std::size_t nb = b.size() < n - i ? b.size() : n - i;
    for (std::size_t j = 0; j < nb; ++j) {
      std::uint64_t v = acc[i + j] + ai * b[j];
      if (v >= kSpill) v %= p;
      acc[i + j] = v;
    }
  }
  std::vector<std::uint32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::uint32_t(acc[i] % p);
  return out;
}

}  // namespace

std::size_t max_truncation() noexcept { return g_max_truncation.load(); }
void set_max_truncation(std::size_t n) noexcept { g_max_truncation.store(n); }

TruncatedPoly::TruncatedPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
  check_modulus(p);
  if (coeffs_.empty()) fail(ErrorCode::InvalidTruncation, "truncation must be positive");
  if (coeffs_.size() > max_truncation())
    fail(ErrorCode::InvalidTruncation, "truncation exceeds configured limit");
  for (std::uint32_t c : coeffs_) {
    if (c >= p) fail(ErrorCode::BadDigit, "coefficient out of range");
  }
}

TruncatedPoly TruncatedPoly::zero(std::uint32_t p, std::size_t n) {
  return TruncatedPoly(p, std::vector<std::uint32_t>(n, 0));
}

TruncatedPoly TruncatedPoly::constant(std::uint32_t p, std::uint32_t c, std::size_t n) {
  std::vector<std::uint32_t> v(n, 0);
  if (!v.empty()) v[0] = c;
  return TruncatedPoly(p, std::move(v));
}

TruncatedPoly TruncatedPoly::from_digits(std::uint32_t p, std::string_view digits) {
  return TruncatedPoly(p, parse_symbols(p, digits));
}

bool TruncatedPoly::is_zero() const noexcept {
  for (std::uint32_t c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

std::size_t TruncatedPoly::valuation() const {
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] != 0) return j;
  }
  fail(ErrorCode::ZeroPolynomial, "valuation of zero is undefined");
}

TruncatedPoly TruncatedPoly::shifted_down(std::size_t ell) const {
  if (ell >= coeffs_.size())
    fail(ErrorCode::TruncationUnderflow, "shift consumes the whole truncation");
  for (std::size_t j = 0; j < ell; ++j) {
    if (coeffs_[j] != 0) fail(ErrorCode::NotDivisible, "low coefficient is nonzero");
  }
  std::vector<std::uint32_t> out(coeffs_.begin() + ell, coeffs_.end());
  return TruncatedPoly(unchecked_t{}, p_, std::move(out));
}

TruncatedPoly TruncatedPoly::shifted_up(std::size_t ell) const {
  std::vector<std::uint32_t> out(coeffs_.size(), 0);
  for (std::size_t j = ell; j < out.size(); ++j) out[j] = coeffs_[j - ell];
  return TruncatedPoly(unchecked_t{}, p_, std::move(out));
}

TruncatedPoly TruncatedPoly::inverse_unit() const {
  if (coeffs_[0] == 0) fail(ErrorCode::NonUnit, "constant term is zero");
  const std::size_t n = coeffs_.size();
  std::vector<std::uint32_t> u{mod_inv(coeffs_[0], p_)};
  std::size_t prec = 1;
  while (prec < n) {
    const std::size_t next = prec * 2 < n ? prec * 2 : n;
    // u <- u*(2 - f*u) mod x^next
    std::vector<std::uint32_t> fu = mul_truncated(coeffs_, u, next, p_);
    fu[0] = mod_sub(2 % p_, fu[0], p_);
    for (std::size_t j = 1; j < next; ++j) fu[j] = mod_neg(fu[j], p_);
    u = mul_truncated(u, fu, next, p_);
    prec = next;
  }
  return TruncatedPoly(unchecked_t{}, p_, std::move(u));
}

TruncatedPoly TruncatedPoly::truncated(std::size_t n) const {
  if (n == 0 || n > coeffs_.size())
    fail(ErrorCode::InvalidTruncation, "bad truncation request");
  std::vector<std::uint32_t> out(coeffs_.begin(), coeffs_.begin() + n);
  return TruncatedPoly(unchecked_t{}, p_, std::move(out));
}

TruncatedPoly TruncatedPoly::zero_extended(std::size_t n) const {
  if (n < coeffs_.size()) fail(ErrorCode::InvalidTruncation, "extension must not shrink");
  if (n > max_truncation())
    fail(ErrorCode::InvalidTruncation, "truncation exceeds configured limit");
  std::vector<std::uint32_t> out = coeffs_;
  out.resize(n, 0);
  return TruncatedPoly(unchecked_t{}, p_, std::move(out));
}

TruncatedPoly TruncatedPoly::scaled(std::uint32_t c) const {
  std::vector<std::uint32_t> out(coeffs_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = mod_mul(coeffs_[j], c % p_, p_);
  return TruncatedPoly(unchecked_t{}, p_, std::move(out));
}

TruncatedPoly TruncatedPoly::negated() const {
  std::vector<std::uint32_t> out(coeffs_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = mod_neg(coeffs_[j], p_);
  return TruncatedPoly(unchecked_t{}, p_, std::move(out));
}

void TruncatedPoly::require_same_modulus(const TruncatedPoly& f, const TruncatedPoly& g) {
  if (f.p_ != g.p_) fail(ErrorCode::ModulusMismatch, "mixed coefficient moduli");
}

TruncatedPoly operator+(const TruncatedPoly& f, const TruncatedPoly& g) {
  TruncatedPoly::require_same_modulus(f, g);
  const std::size_t n = f.coeffs_.size() < g.coeffs_.size() ? f.coeffs_.size() : g.coeffs_.size();
  std::vector<std::uint32_t> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = mod_add(f.coeffs_[j], g.coeffs_[j], f.p_);
  return TruncatedPoly(TruncatedPoly::unchecked_t{}, f.p_, std::move(out));
}

TruncatedPoly operator-(const TruncatedPoly& f, const TruncatedPoly& g) {
  TruncatedPoly::require_same_modulus(f, g);
  const std::size_t n = f.coeffs_.size() < g.coeffs_.size() ? f.coeffs_.size() : g.coeffs_.size();
  std::vector<std::uint32_t> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = mod_sub(f.coeffs_[j], g.coeffs_[j], f.p_);
  return TruncatedPoly(TruncatedPoly::unchecked_t{}, f.p_, std::move(out));
}

TruncatedPoly operator*(const TruncatedPoly& f, const TruncatedPoly& g) {
  TruncatedPoly::require_same_modulus(f, g);
  const std::size_t n = f.coeffs_.size() < g.coeffs_.size() ? f.coeffs_.size() : g.coeffs_.size();
  return TruncatedPoly(TruncatedPoly::unchecked_t{}, f.p_,
                       mul_truncated(f.coeffs_, g.coeffs_, n, f.p_));
}

TruncatedPoly solve_divide(const TruncatedPoly& f, const TruncatedPoly& h,
                           std::size_t kmod, std::size_t ell) {
  if (f.modulus() != h.modulus())
    fail(ErrorCode::ModulusMismatch, "mixed coefficient moduli");
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "divisor is zero");
  if (kmod == 0 || f.truncation() < kmod || h.truncation() < kmod)
    fail(ErrorCode::TruncationUnderflow, "operands carry fewer than kmod coefficients");
  const std::size_t low = f.valuation();
  if (ell == 0 || ell + low > kmod)
    fail(ErrorCode::DegreeBoundViolated, "ell + valuation(f) exceeds kmod");
  const TruncatedPoly hk = h.truncated(kmod);
  for (std::size_t j = 0; j < low; ++j) {
    if (hk.coeff(j) != 0)
      fail(ErrorCode::InconsistentSystem, "x^valuation(f) does not divide h");
  }
  const TruncatedPoly f1 = f.truncated(kmod).shifted_down(low).truncated(ell);
  const TruncatedPoly h1 = (low == 0 ? hk : hk.shifted_down(low)).truncated(ell);
  return (h1 * f1.inverse_unit()).truncated(ell);
}

std::vector<std::uint32_t> parse_symbols(std::uint32_t p, std::string_view digits) {
  std::vector<std::uint32_t> out;
  if (p <= 10) {
    out.reserve(digits.size());
    for (char ch : digits) {
      if (ch < '0' || ch > '9') fail(ErrorCode::BadDigit, "digit expected");
      const std::uint32_t v = std::uint32_t(ch - '0');
      if (v >= p) fail(ErrorCode::BadDigit, "digit exceeds modulus");
      out.push_back(v);
    }
  } else {
    std::istringstream in{std::string(digits)};
    std::string tok;
    while (in >> tok) {
      std::uint64_t v = 0;
      for (char ch : tok) {
        if (ch < '0' || ch > '9') fail(ErrorCode::BadDigit, "decimal symbol expected");
        v = v * 10 + std::uint64_t(ch - '0');
        if (v >= p) fail(ErrorCode::BadDigit, "symbol exceeds modulus");
      }
      if (tok.empty()) fail(ErrorCode::BadDigit, "empty symbol");
      out.push_back(std::uint32_t(v));
    }
  }
  if (out.empty()) fail(ErrorCode::BadDigit, "empty digit string");
  return out;
}

std::string format_symbols(std::uint32_t p, const std::vector<std::uint32_t>& symbols) {
  std::string out;
  if (p <= 10) {
    out.reserve(symbols.size());
    for (std::uint32_t s : symbols) out.push_back(char('0' + s));
  } else {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i > 0) out.push_back(' ');
      out += std::to_string(symbols[i]);
    }
  }
  return out;
}

std::string TruncatedPoly::digits() const { return format_symbols(p_, coeffs_); }

}  // namespace etss
