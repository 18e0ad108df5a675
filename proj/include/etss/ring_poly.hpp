#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "etss/field.hpp"

namespace etss {

// Truncation orders are capped so a misbehaving caller cannot ask for
// gigabyte-sized dealers; the limit is process-wide and adjustable.
std::size_t max_truncation() noexcept;
void set_max_truncation(std::size_t n) noexcept;

// Element of F_p[x]/x^N. The truncation order N is part of the value's
// identity: exactly N coefficients are stored (trailing zeros retained),
// and equality requires p, N and all coefficients to match. Mixed-N
// arithmetic resolves to the minimum truncation of the operands.
class TruncatedPoly {
 public:
  TruncatedPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  static TruncatedPoly zero(std::uint32_t p, std::size_t n);
  static TruncatedPoly constant(std::uint32_t p, std::uint32_t c, std::size_t n);
  // Parses the digit-string form: exactly N symbols, x^0 first.
  static TruncatedPoly from_digits(std::uint32_t p, std::string_view digits);

  std::uint32_t modulus() const noexcept { return p_; }
  std::size_t truncation() const noexcept { return coeffs_.size(); }
  const std::vector<std::uint32_t>& coeffs() const noexcept { return coeffs_; }
  std::uint32_t coeff(std::size_t j) const { return coeffs_.at(j); }
  FieldElement at(std::size_t j) const { return FieldElement(coeffs_.at(j), p_); }

  bool is_zero() const noexcept;

  // Index of the lowest nonzero coefficient. Undefined for the zero value:
  // throws ZeroPolynomial rather than returning N.
  std::size_t valuation() const;

  // Exact division by x^L; the result lives in F_p[x]/x^(N-L).
  TruncatedPoly shifted_down(std::size_t ell) const;

  // Multiplication by x^L inside F_p[x]/x^N (coefficients shifted up,
  // overflow truncated).
  TruncatedPoly shifted_up(std::size_t ell) const;

  // Inverse of a unit (nonzero constant term) in F_p[x]/x^N, by Newton
  // iteration; the inverse is unique in this ring.
  TruncatedPoly inverse_unit() const;

  TruncatedPoly truncated(std::size_t n) const;
  TruncatedPoly zero_extended(std::size_t n) const;
  TruncatedPoly scaled(std::uint32_t c) const;
  TruncatedPoly negated() const;

  // Exactly N symbols, x^0 first; contiguous digits for p <= 10,
  // space-separated decimal symbols otherwise.
  std::string digits() const;

  friend TruncatedPoly operator+(const TruncatedPoly& f, const TruncatedPoly& g);
  friend TruncatedPoly operator-(const TruncatedPoly& f, const TruncatedPoly& g);
  friend TruncatedPoly operator*(const TruncatedPoly& f, const TruncatedPoly& g);

  bool operator==(const TruncatedPoly& o) const noexcept {
    return p_ == o.p_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const TruncatedPoly& o) const noexcept { return !(*this == o); }

 private:
  struct unchecked_t {};
  TruncatedPoly(unchecked_t, std::uint32_t p, std::vector<std::uint32_t> coeffs)
      : p_(p), coeffs_(std::move(coeffs)) {}

  static void require_same_modulus(const TruncatedPoly& f, const TruncatedPoly& g);

  std::uint32_t p_;
  std::vector<std::uint32_t> coeffs_;
};

// The unique g in F_p[x]/x^ell with f*g == h (mod x^kmod), where
// ell + valuation(f) <= kmod and both operands carry at least kmod
// coefficients. Computed as (h/x^L)*(f/x^L)^-1 mod x^ell with
// L = valuation(f).
TruncatedPoly solve_divide(const TruncatedPoly& f, const TruncatedPoly& h,
                           std::size_t kmod, std::size_t ell);

// Digit-string helpers shared with the codec and share-record layers.
std::vector<std::uint32_t> parse_symbols(std::uint32_t p, std::string_view digits);
std::string format_symbols(std::uint32_t p, const std::vector<std::uint32_t>& symbols);

}  // namespace etss
