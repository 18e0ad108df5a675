#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "etss/prefix_code.hpp"
#include "etss/ring_poly.hpp"
#include "etss/rng.hpp"

namespace etss {

// One scheme instance: threshold k over F_p[x], ell-symbol secrets,
// participant indices mapped to codewords by the codec.
struct SchemeParams {
  std::uint32_t p;
  std::uint32_t k;
  std::uint32_t ell;
  Codec codec;

  void validate() const;
};

// An ell-symbol secret in polynomial form (truncation exactly ell;
// leading-zero symbols are meaningful).
class Secret {
 public:
  explicit Secret(TruncatedPoly poly) : poly_(std::move(poly)) {}
  static Secret from_digits(std::uint32_t p, std::string_view digits) {
    return Secret(TruncatedPoly::from_digits(p, digits));
  }

  const TruncatedPoly& poly() const noexcept { return poly_; }
  std::size_t length() const noexcept { return poly_.truncation(); }
  std::uint32_t modulus() const noexcept { return poly_.modulus(); }
  std::string digits() const { return poly_.digits(); }

  bool operator==(const Secret& o) const noexcept { return poly_ == o.poly_; }
  bool operator!=(const Secret& o) const noexcept { return !(*this == o); }

 private:
  TruncatedPoly poly_;
};

// Header fields carried by every share record.
struct ShareParams {
  std::uint32_t p;
  std::uint32_t k;
  std::uint32_t ell;
  std::string codec_name;

  bool operator==(const ShareParams&) const = default;
};

// Share of participant t: the codeword c_t and the polynomial
// Z_t = sum_j r_j y_t^j + s y_t^(k-1) in F_p[x]/x^((len(c_t)-1)(k-1)+ell).
struct Share {
  ShareParams params;
  std::uint64_t t = 0;
  Codeword codeword;
  TruncatedPoly z;

  bool operator==(const Share& o) const noexcept {
    return params == o.params && t == o.t && codeword == o.codeword && z == o.z;
  }
};

inline std::size_t share_truncation(std::uint32_t k, std::uint32_t ell,
                                    std::size_t code_len) {
  return (code_len - 1) * std::size_t(k - 1) + ell;
}

// ASCII record, one share per line:
//   ETSS1 p=<p> k=<k> l=<ell> code=<codec> t=<t> cw=<digits> z=<digits>
// Digit strings are ascending-power and round-trip exactly.
std::string format_share_record(const Share& share);
Share parse_share_record(std::string_view line);

// Recovers the secret from exactly k shares of distinct participants via
// the cofactor formula: with pairwise valuations L_uv and
// alpha = min_m { N_m + sum_{u<v, u,v != m} L_uv }, the secret solves
//   s * prod_{u<v}(y_u - y_v)
//     = sum_m (-1)^(m-1) prod_{u<v, u,v != m}(y_u - y_v) * Z_m  (mod x^alpha)
// at truncation ell. Participants are taken in ascending index order.
Secret reconstruct(std::span<const Share> shares);

// Independent check path: treats the share equations as one linear system
// over F_p in the coefficients of (r_0..r_{k-2}, s), solves it by
// elimination and returns the secret component. Must agree with
// reconstruct() on every valid input.
Secret reconstruct_oracle(std::span<const Share> shares);

// The dealer: holds the secret and the randomness polynomials, growing
// them lazily as larger shares are issued. Coefficients, once drawn, are
// never revised, so previously issued shares stay valid.
class Dealer {
 public:
  // Fresh dealer; the share stream is a deterministic function of the seed
  // and the issuance sequence.
  Dealer(const SchemeParams& params, Secret secret, std::uint64_t seed);

  // Test hook: the randomness polynomials are given explicitly, one digit
  // string per r_j; issuing beyond their length is an error.
  static Dealer with_fixed_randomness(const SchemeParams& params, Secret secret,
                                      const std::vector<std::string>& r_digits);

  // Stateless-dealer path: reconstructs the secret from exactly k shares,
  // re-derives randomness consistent with all of them by solving the share
  // equations, and seeds fresh draws for coefficients the shares leave
  // unconstrained. Re-issuing any input index reproduces its share exactly.
  static Dealer recover(const SchemeParams& params, std::span<const Share> shares,
                        std::uint64_t seed);

  Share issue(std::uint64_t t);

  bool has_issued(std::uint64_t t) const;
  const std::vector<Share>& issued() const noexcept { return issued_; }
  const SchemeParams& params() const noexcept { return params_; }
  const Secret& secret() const noexcept { return secret_; }

  // Current working truncation of the randomness polynomials.
  std::size_t randomness_extent() const noexcept { return extent_; }
  TruncatedPoly randomness(std::size_t j) const;

  // Share polynomial for a codeword already covered by the current extent;
  // pure, used to re-check recovered state against issued shares.
  TruncatedPoly share_polynomial(const Codeword& codeword, std::size_t n) const;

 private:
  Dealer(const SchemeParams& params, Secret secret);
  void extend_to(std::size_t n);

  SchemeParams params_;
  Secret secret_;
  std::vector<std::vector<std::uint32_t>> rs_;  // r_0..r_{k-2}, extent_ coeffs each
  std::size_t extent_ = 0;
  bool fixed_ = false;
  std::vector<std::vector<std::uint32_t>> fixed_rs_;
  SymbolRng rng_{0};
  std::vector<Share> issued_;
};

}  // namespace etss
