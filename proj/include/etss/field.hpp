#pragma once

#include <cstdint>

#include "etss/error.hpp"

namespace etss {

// Largest modulus accepted anywhere; keeps (p-1)^2 in range for 64-bit
// accumulation inside the polynomial kernels.
inline constexpr std::uint32_t kMaxModulus = (1u << 31) - 1;

bool is_prime(std::uint64_t n) noexcept;

// Throws InvalidModulus unless p is prime and <= kMaxModulus.
void check_modulus(std::uint32_t p);

inline std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t(a) + b;
  return std::uint32_t(s >= p ? s - p : s);
}

inline std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : std::uint32_t(a + std::uint64_t(p) - b);
}

inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return std::uint32_t(std::uint64_t(a) * b % p);
}

inline std::uint32_t mod_neg(std::uint32_t a, std::uint32_t p) {
  return a == 0 ? 0 : p - a;
}

std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);

// Inverse of a nonzero residue (Fermat; p prime). Throws NonUnit on zero.
std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p);

// A single residue tagged with its prime modulus.
class FieldElement {
 public:
  FieldElement(std::uint32_t value, std::uint32_t p) : value_(value), p_(p) {
    check_modulus(p);
    if (value >= p) fail(ErrorCode::BadDigit, "field value out of range");
  }

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return p_; }

  FieldElement operator+(const FieldElement& o) const {
    require_same(o);
    return FieldElement(mod_add(value_, o.value_, p_), p_);
  }
  FieldElement operator-(const FieldElement& o) const {
    require_same(o);
    return FieldElement(mod_sub(value_, o.value_, p_), p_);
  }
  FieldElement operator*(const FieldElement& o) const {
    require_same(o);
    return FieldElement(mod_mul(value_, o.value_, p_), p_);
  }
  FieldElement inverse() const { return FieldElement(mod_inv(value_, p_), p_); }
  FieldElement operator-() const { return FieldElement(mod_neg(value_, p_), p_); }

  bool operator==(const FieldElement& o) const noexcept {
    return p_ == o.p_ && value_ == o.value_;
  }

 private:
  void require_same(const FieldElement& o) const {
    if (p_ != o.p_) fail(ErrorCode::ModulusMismatch, "mixed field moduli");
  }

  std::uint32_t value_;
  std::uint32_t p_;
};

}  // namespace etss
