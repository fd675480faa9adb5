#include "diaghyp/exact_arith.hpp"

#include <numeric>
#include <stdexcept>

namespace diaghyp {

bool is_prime(std::int64_t value) {
  if (value < 2) return false;
  if (value < 4) return true;
  if (value % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= value; d += 2) {
    if (value % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::int64_t p) {
  if (p > kMaxModulus) {
    throw PreconditionError("modulus " + std::to_string(p) + " exceeds 2^31 - 1");
  }
  if (!is_prime(p)) {
    throw PreconditionError(std::to_string(p) + " is not prime");
  }
  p_ = static_cast<std::uint32_t>(p);
}

Residue PrimeField::reduce(std::int64_t value) const noexcept {
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Residue>(r);
}

Residue PrimeField::reduce(const BigInteger& value) const {
  BigInteger r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), p_);
  return static_cast<Residue>(r.get_ui());
}

Residue PrimeField::pow(Residue base, std::uint64_t exponent) const noexcept {
  Residue result = 1 % p_;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1;
  }
  return result;
}

Residue PrimeField::inv(Residue a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(p_));
  // Extended Euclid on (a, p).
  std::int64_t r0 = p_, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t quot = r0 / r1;
    std::int64_t t = r0 - quot * r1;
    r0 = r1;
    r1 = t;
    t = s0 - quot * s1;
    s0 = s1;
    s1 = t;
  }
  return reduce(s0);
}

BigInteger binomial_general(std::int64_t n, std::int64_t m) {
  if (m < 0) {
    throw PreconditionError("binomial lower index must be nonnegative, got " +
                            std::to_string(m));
  }
  // After step i the accumulator holds binom(n, i + 1), so each division is exact.
  BigInteger acc = 1;
  for (std::int64_t i = 0; i < m; ++i) {
    acc *= static_cast<long>(n - i);
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(i + 1));
  }
  return acc;
}

namespace {

// binom(n, m) mod p for 0 <= m <= n < p.
Residue small_binomial(std::uint64_t n, std::uint64_t m, const PrimeField& field) {
  if (m > n - m) m = n - m;
  Residue num = 1, den = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    num = field.mul(num, field.reduce(static_cast<std::int64_t>(n - i)));
    den = field.mul(den, field.reduce(static_cast<std::int64_t>(i + 1)));
  }
  return field.mul(num, field.inv(den));
}

}  // namespace

Residue binomial_mod_p(std::uint64_t n, std::uint64_t m, const PrimeField& field) {
  const std::uint64_t p = field.modulus();
  Residue result = 1 % p;
  while (m > 0 || n > 0) {
    std::uint64_t nd = n % p, md = m % p;
    if (md > nd) return 0;
    result = field.mul(result, small_binomial(nd, md, field));
    n /= p;
    m /= p;
  }
  return result;
}

std::int64_t mult_order(std::int64_t p, std::int64_t n) {
  if (n < 2) throw PreconditionError("mult_order needs n >= 2");
  if (std::gcd(p, n) != 1) {
    throw PreconditionError("gcd(p, n) != 1: p = " + std::to_string(p) +
                            ", n = " + std::to_string(n));
  }
  const std::int64_t base = p % n;
  std::int64_t acc = base;
  std::int64_t e = 1;
  while (acc != 1) {
    acc = acc * base % n;
    ++e;
  }
  return e;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      while (n % d == 0) n /= d;
      result -= result / d;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

BigInteger require_integral(const BigRational& value) {
  if (value.get_den() != 1) {
    throw std::domain_error("expected an integer, got " + to_decimal(value));
  }
  return value.get_num();
}

PowerParams PowerParams::make(std::int64_t n, std::int64_t p, std::int64_t e) {
  if (n < 2) throw PreconditionError("n must be at least 2");
  if (e < 0) throw PreconditionError("e must be nonnegative");
  if (!is_prime(p) || p > PrimeField::kMaxModulus) {
    throw PreconditionError(std::to_string(p) + " is not prime");
  }
  if (n % p == 0) throw PreconditionError("p divides n");
  constexpr std::int64_t kMaxQ = std::int64_t{1} << 40;
  PowerParams out;
  out.n = n;
  out.p = p;
  out.e = e;
  out.q = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    if (out.q > kMaxQ / p) throw DeskScaleExceeded("q = p^e exceeds 2^40");
    out.q *= p;
  }
  out.k = out.q / n;
  out.delta = out.q % n;
  if (n == 3 && p % 6 == 5) out.m = (p - 5) / 6;
  return out;
}

std::string to_decimal(const BigInteger& value) { return value.get_str(10); }

std::string to_decimal(const BigRational& value) { return value.get_str(10); }

}  // namespace diaghyp
