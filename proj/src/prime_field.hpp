#pragma once

#include <cstdint>

#include "ccon/rng.hpp"

namespace ccon::detail {

// -p^-1 mod 2^64 by Newton iteration
constexpr std::uint64_t montgomery_neg_inverse(std::uint64_t p) {
  std::uint64_t inv = p;
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  return 0 - inv;
}

/// Arithmetic mod the prime 2^63 - 25 in Montgomery form (R = 2^64).
///
/// Values stay in Montgomery representation throughout; rank computations
/// only need zero tests and field operations, so nothing converts back.
class PrimeField {
 public:
  using value_type = std::uint64_t;
  static constexpr std::uint64_t kModulus = 9223372036854775783ULL;  // 2^63 - 25

  static constexpr value_type zero() { return 0; }
  static constexpr value_type one() { return kOneMont; }

  static constexpr value_type add(value_type a, value_type b) {
    const value_type s = a + b;  // both < 2^63, no wraparound
    return s >= kModulus ? s - kModulus : s;
  }
  static constexpr value_type sub(value_type a, value_type b) {
    return a >= b ? a - b : a + kModulus - b;
  }
  static constexpr value_type mul(value_type a, value_type b) {
    return reduce(static_cast<unsigned __int128>(a) * b);
  }
  static constexpr value_type neg(value_type a) { return a == 0 ? 0 : kModulus - a; }

  /// Multiplicative inverse by Fermat. Requires a != 0.
  static constexpr value_type inverse(value_type a) {
    value_type result = one();
    std::uint64_t e = kModulus - 2;
    while (e != 0) {
      if (e & 1U) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }

  /// Uniform nonzero element.
  static value_type random_nonzero(Rng& rng) { return 1 + rng.below(kModulus - 1); }

 private:
  static constexpr std::uint64_t kNegInv = montgomery_neg_inverse(kModulus);
  static constexpr std::uint64_t kOneMont = (0 - kModulus) % kModulus;  // 2^64 mod p

  static constexpr value_type reduce(unsigned __int128 t) {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * kNegInv;
    const auto u = static_cast<std::uint64_t>((t + static_cast<unsigned __int128>(m) * kModulus) >> 64);
    return u >= kModulus ? u - kModulus : u;
  }
};

static_assert(PrimeField::mul(PrimeField::one(), PrimeField::one()) == PrimeField::one());
static_assert(PrimeField::mul(PrimeField::inverse(PrimeField::add(PrimeField::one(), PrimeField::one())),
                              PrimeField::add(PrimeField::one(), PrimeField::one())) == PrimeField::one());

}  // namespace ccon::detail
