#pragma once

/*
 * Exact scalars for the diagonal hypersurface toolkit.
 *
 * BigInteger and BigRational are GMP values; PrimeField is a word-size
 * prime field with residues kept canonical in [0, p). Nothing here
 * touches floating point.
 */

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "diaghyp/errors.hpp"

namespace diaghyp {

using BigInteger = mpz_class;
using BigRational = mpq_class;

// Canonical residue in [0, p).
using Residue = std::uint32_t;

// Deterministic trial division; callers only pass values below 2^31.
bool is_prime(std::int64_t value);

class PrimeField {
 public:
  static constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

  // Throws PreconditionError unless p is a prime below 2^31.
  explicit PrimeField(std::int64_t p);

  std::uint32_t modulus() const noexcept { return p_; }

  Residue reduce(std::int64_t value) const noexcept;
  Residue reduce(const BigInteger& value) const;

  Residue add(Residue a, Residue b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Residue>(s >= p_ ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p_ - b);
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(std::uint64_t{a} * b % p_);
  }
  Residue pow(Residue base, std::uint64_t exponent) const noexcept;
  // Throws std::domain_error on zero.
  Residue inv(Residue a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

// n(n-1)...(n-m+1)/m! for any integer n. m = 0 gives 1; m < 0 is rejected.
BigInteger binomial_general(std::int64_t n, std::int64_t m);

// binom(n, m) mod p through the base-p digits of n and m.
Residue binomial_mod_p(std::uint64_t n, std::uint64_t m, const PrimeField& field);

// Smallest e >= 1 with p^e = 1 mod n. Rejects gcd(p, n) != 1.
std::int64_t mult_order(std::int64_t p, std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

// Throws std::domain_error if value is not an integer.
BigInteger require_integral(const BigRational& value);

// Powers of p, decomposed as q = p^e = n*k + delta.
struct PowerParams {
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::int64_t e = 0;
  std::int64_t q = 0;
  std::int64_t k = 0;
  std::int64_t delta = 0;
  // Set only when n = 3 and p = 6m + 5.
  std::optional<std::int64_t> m;

  // Validates n >= 2, p prime, gcd(p, n) = 1 and e >= 0; q must stay below 2^40.
  static PowerParams make(std::int64_t n, std::int64_t p, std::int64_t e);

  friend bool operator==(const PowerParams&, const PowerParams&) = default;
};

std::string to_decimal(const BigInteger& value);
std::string to_decimal(const BigRational& value);

}  // namespace diaghyp
