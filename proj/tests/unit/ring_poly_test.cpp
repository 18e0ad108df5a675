#include <doctest.h>

#include "etss/ring_poly.hpp"
#include "etss/rng.hpp"
#include "test_util.hpp"

using namespace etss;
using etss::test::code_of;

namespace {

TruncatedPoly P(std::uint32_t p, const char* digits) {
  return TruncatedPoly::from_digits(p, digits);
}

TruncatedPoly random_poly(SymbolRng& rng, std::uint32_t p, std::size_t n) {
  std::vector<std::uint32_t> c(n);
  for (auto& v : c) v = rng.symbol(p);
  return TruncatedPoly(p, std::move(c));
}

}  // namespace

TEST_CASE("modulus validation") {
  CHECK(is_prime(2));
  CHECK(is_prime(7919));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));  // Carmichael
  CHECK(code_of([] { TruncatedPoly::zero(4, 3); }) == ErrorCode::InvalidModulus);
  CHECK(code_of([] { TruncatedPoly::zero(1, 3); }) == ErrorCode::InvalidModulus);
  CHECK(code_of([] { FieldElement(3, 3); }) == ErrorCode::BadDigit);
  CHECK((FieldElement(2, 3) * FieldElement(2, 3)).value() == 1);
  CHECK(FieldElement(2, 5).inverse().value() == 3);
}

TEST_CASE("truncation is part of the identity") {
  CHECK(P(2, "1010") != P(2, "10100"));
  CHECK(P(2, "1010") == P(2, "1010"));
  CHECK(code_of([] { TruncatedPoly(2, {}); }) == ErrorCode::InvalidTruncation);

  const std::size_t saved = max_truncation();
  set_max_truncation(8);
  CHECK(code_of([] { TruncatedPoly::zero(2, 9); }) == ErrorCode::InvalidTruncation);
  set_max_truncation(saved);
}

TEST_CASE("addition matches the worked binary share") {
  // r_0 + s*y with s = 1+x^3 and y = 1+x^2, all inside F_2[x]/x^6.
  const TruncatedPoly r0 = P(2, "10101001");
  const TruncatedPoly product =
      P(2, "1001").zero_extended(6) * P(2, "101").zero_extended(6);
  CHECK(product.digits() == "101101");
  CHECK((r0 + product).digits() == "000111");
}

TEST_CASE("addition basics") {
  const TruncatedPoly f = P(3, "2200");
  CHECK((f + f).digits() == "1100");
  CHECK((f + TruncatedPoly::zero(3, 4)) == f);
  // cross-modulus operands resolve to the minimum truncation
  CHECK((P(2, "101101") + P(2, "10101001")).truncation() == 6);
  CHECK(code_of([] { P(2, "10") + P(3, "10"); }) == ErrorCode::ModulusMismatch);
}

TEST_CASE("valuation") {
  CHECK(P(2, "011000").valuation() == 1);   // x+x^2
  CHECK(P(2, "1").valuation() == 0);        // unit
  CHECK(P(2, "00001100").valuation() == 4); // x^4+x^5
  CHECK(code_of([] { P(2, "0000").valuation(); }) == ErrorCode::ZeroPolynomial);
}

TEST_CASE("shift_down") {
  CHECK(P(2, "011000").shifted_down(1) == P(2, "11000"));
  CHECK(P(2, "011000").shifted_down(0) == P(2, "011000"));
  CHECK(P(2, "00001100").shifted_down(4) == P(2, "1100"));
  CHECK(code_of([] { P(2, "011000").shifted_down(2); }) == ErrorCode::NotDivisible);
  CHECK(code_of([] { P(2, "0000").shifted_down(4); }) == ErrorCode::TruncationUnderflow);
  CHECK(P(2, "0000").shifted_down(3) == P(2, "0"));
}

TEST_CASE("shift round trip below the boundary") {
  SymbolRng rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5, 7}[rng.symbol(4)];
    const std::size_t n = 2 + rng.symbol(14);
    const std::size_t shift = rng.symbol(std::uint32_t(n));
    TruncatedPoly f = random_poly(rng, p, n);
    {  // clear the low coefficients so x^shift divides f
      auto c = f.coeffs();
      for (std::size_t j = 0; j < shift; ++j) c[j] = 0;
      f = TruncatedPoly(p, c);
    }
    CHECK(f.shifted_down(shift).zero_extended(n).shifted_up(shift) == f);
  }
}

TEST_CASE("invert_unit known answers") {
  CHECK(P(2, "1100").inverse_unit().digits() == "1111");
  CHECK(P(2, "10000").inverse_unit().digits() == "10000");
  CHECK(P(3, "2122").inverse_unit().digits() == "2202");
  CHECK(code_of([] { P(2, "0110").inverse_unit(); }) == ErrorCode::NonUnit);
}

TEST_CASE("invert_unit inverts every random unit") {
  SymbolRng rng(23);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 1 + rng.symbol(64);
      TruncatedPoly f = random_poly(rng, p, n);
      auto c = f.coeffs();
      c[0] = 1 + rng.symbol(p - 1);
      f = TruncatedPoly(p, c);
      CHECK(f * f.inverse_unit() == TruncatedPoly::constant(p, 1, n));
    }
  }
}

TEST_CASE("solve_divide known answers") {
  // binary reconstruction step: (x+x^2+x^4+x^5)/(x+x^2) mod x^6, secret length 4
  CHECK(solve_divide(P(2, "011000"), P(2, "011011"), 6, 4).digits() == "1001");
  // unit divisor
  CHECK(solve_divide(P(2, "1000"), P(2, "0110"), 4, 4) == P(2, "0110"));
  // ternary reconstruction step
  CHECK(solve_divide(P(3, "02122200"), P(3, "01122112"), 8, 4).digits() == "2101");

  CHECK(code_of([] { solve_divide(P(2, "0100"), P(2, "1000"), 4, 3); }) ==
        ErrorCode::InconsistentSystem);
  CHECK(code_of([] { solve_divide(P(2, "0100"), P(2, "0100"), 4, 4); }) ==
        ErrorCode::DegreeBoundViolated);
  CHECK(code_of([] { solve_divide(P(2, "0000"), P(2, "0100"), 4, 2); }) ==
        ErrorCode::ZeroPolynomial);
  CHECK(code_of([] { solve_divide(P(2, "01"), P(2, "01"), 4, 1); }) ==
        ErrorCode::TruncationUnderflow);
}

TEST_CASE("solve_divide recovers the planted quotient") {
  SymbolRng rng(37);
  for (int i = 0; i < 400; ++i) {
    const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5, 7}[rng.symbol(4)];
    const std::size_t n = 8 + rng.symbol(24);
    TruncatedPoly f = random_poly(rng, p, n);
    if (f.is_zero()) continue;
    const std::size_t low = f.valuation();
    if (low + 2 > n) continue;
    const std::size_t ell = 1 + rng.symbol(std::uint32_t(n - low - 1));
    const std::size_t kmod = ell + low + rng.symbol(std::uint32_t(n - low - ell + 1));
    const TruncatedPoly g = random_poly(rng, p, ell);
    const TruncatedPoly h = f * g.zero_extended(n);
    const TruncatedPoly back = solve_divide(f, h, kmod, ell);
    CHECK(back == g);
    // stated congruence: f*g == h (mod x^(ell + valuation(f)))
    CHECK((f * back.zero_extended(n)).truncated(ell + low) == h.truncated(ell + low));
  }
}

TEST_CASE("solve_divide solution is unique (exhaustive, p=2)") {
  SymbolRng rng(41);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 8;
    TruncatedPoly f = random_poly(rng, 2, n);
    if (f.is_zero()) continue;
    const std::size_t low = f.valuation();
    const std::size_t ell = 1 + rng.symbol(4);
    if (ell + low > n) continue;
    const std::size_t kmod = ell + low;
    const TruncatedPoly g0 = random_poly(rng, 2, ell);
    const TruncatedPoly h = f * g0.zero_extended(n);
    int solutions = 0;
    for (std::uint32_t bits = 0; bits < (1u << ell); ++bits) {
      std::vector<std::uint32_t> c(ell);
      for (std::size_t j = 0; j < ell; ++j) c[j] = (bits >> j) & 1;
      const TruncatedPoly g(2, c);
      if ((f * g.zero_extended(n)).truncated(kmod) == h.truncated(kmod)) ++solutions;
    }
    CHECK(solutions == 1);
  }
}

TEST_CASE("ring laws under mixed truncations") {
  SymbolRng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5, 7}[rng.symbol(4)];
    const TruncatedPoly f = random_poly(rng, p, 1 + rng.symbol(12));
    const TruncatedPoly g = random_poly(rng, p, 1 + rng.symbol(12));
    const TruncatedPoly h = random_poly(rng, p, 1 + rng.symbol(12));
    CHECK((f + g) == (g + f));
    CHECK((f * g) == (g * f));
    CHECK(((f + g) + h) == (f + (g + h)));
    CHECK(((f * g) * h) == (f * (g * h)));
    CHECK((f * (g + h)) == ((f * g) + (f * h)));
  }
}

TEST_CASE("cancellation: f*g == f*h mod x^(L+k) iff g == h mod x^k") {
  SymbolRng rng(7);
  for (int i = 0; i < 500; ++i) {
    const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5}[rng.symbol(3)];
    const std::size_t low = rng.symbol(4);
    const std::size_t kk = 1 + rng.symbol(6);
    const std::size_t n = low + kk + rng.symbol(4);
    std::vector<std::uint32_t> c(n, 0);
    c[low] = 1 + rng.symbol(p - 1);
    for (std::size_t j = low + 1; j < n; ++j) c[j] = rng.symbol(p);
    const TruncatedPoly f(p, c);

    const TruncatedPoly g = random_poly(rng, p, n);
    const TruncatedPoly d = random_poly(rng, p, n);
    const TruncatedPoly h_same = g + d.shifted_up(kk);
    CHECK((f * g).truncated(low + kk) == (f * h_same).truncated(low + kk));

    TruncatedPoly h_diff = g;
    {
      auto cc = h_diff.coeffs();
      const std::size_t pos = rng.symbol(std::uint32_t(kk));
      cc[pos] = (cc[pos] + 1 + rng.symbol(p - 1)) % p;
      h_diff = TruncatedPoly(p, cc);
    }
    CHECK((f * g).truncated(low + kk) != (f * h_diff).truncated(low + kk));
  }
}

TEST_CASE("digit strings") {
  CHECK(P(2, "000111").digits() == "000111");
  CHECK(P(11, "10 3 0 7").digits() == "10 3 0 7");
  CHECK(P(11, "10 3 0 7").coeffs() == std::vector<std::uint32_t>{10, 3, 0, 7});
  CHECK(code_of([] { P(2, "012"); }) == ErrorCode::BadDigit);
  CHECK(code_of([] { P(2, "01a"); }) == ErrorCode::BadDigit);
  CHECK(code_of([] { P(2, ""); }) == ErrorCode::BadDigit);
  CHECK(code_of([] { P(11, "12 11"); }) == ErrorCode::BadDigit);
}
