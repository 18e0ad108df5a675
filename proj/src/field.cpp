#include "etss/field.hpp"

namespace etss {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

void check_modulus(std::uint32_t p) {
  if (p > kMaxModulus) fail(ErrorCode::InvalidModulus, "modulus too large");
  if (!is_prime(p)) fail(ErrorCode::InvalidModulus, "modulus must be prime");
}

std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t base = a % p;
  std::uint64_t acc = 1;
  while (e > 0) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return std::uint32_t(acc);
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) fail(ErrorCode::NonUnit, "zero has no inverse");
  return mod_pow(a % p, p - 2, p);
}

}  // namespace etss
