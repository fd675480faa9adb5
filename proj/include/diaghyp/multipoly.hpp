#pragma once

/*
 * Sparse multivariate polynomials over a prime field.
 *
 * Monomials compare in graded lexicographic order (total degree first,
 * then the exponent of x1, x2, ...). Terms are stored leading term first,
 * which is also the order of the canonical text form:
 *
 *     3*x1^2*x2 + x3^3 + 1
 *
 * Coefficients print only when they differ from 1 (or for the constant
 * term); exponents print only when they differ from 1.
 */

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diaghyp/exact_arith.hpp"

namespace diaghyp {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exponents);

  static Monomial one(std::size_t arity);
  static Monomial variable(std::size_t arity, std::size_t index, std::uint32_t power = 1);

  std::size_t arity() const noexcept { return exponents_.size(); }
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t operator[](std::size_t i) const { return exponents_[i]; }
  std::span<const std::uint32_t> exponents() const noexcept { return exponents_; }

  bool divides(const Monomial& other) const;
  // Requires divides(other). Returns other / *this.
  Monomial cofactor_in(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  Monomial pow(std::uint32_t power) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Graded lexicographic.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<std::uint32_t> exponents_;
  std::uint32_t degree_ = 0;
};

// All monomials of the given arity and total degree, leading (largest) first.
std::vector<Monomial> monomials_of_degree(std::size_t arity, std::uint32_t degree);

// Number of monomials of the given arity and degree.
BigInteger count_monomials(std::size_t arity, std::uint32_t degree);

class PolyRing {
 public:
  PolyRing(PrimeField field, std::vector<std::string> variable_names);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t arity() const noexcept { return names_.size(); }
  const std::vector<std::string>& variable_names() const noexcept { return names_; }

  // Same arity and modulus; variable names are cosmetic.
  bool compatible_with(const PolyRing& other) const noexcept {
    return arity() == other.arity() && field_ == other.field_;
  }

 private:
  PrimeField field_;
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

// x1..xn (or x, y, z ... when names are given explicitly).
RingPtr make_ring(const PrimeField& field, std::vector<std::string> names);
RingPtr make_ring(const PrimeField& field, std::size_t arity, std::string_view prefix);

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Residue, std::greater<>>;

  explicit MultiPoly(RingPtr ring);
  MultiPoly(RingPtr ring, TermMap terms);

  static MultiPoly constant(RingPtr ring, std::int64_t value);
  static MultiPoly monomial(RingPtr ring, Monomial m, Residue coefficient = 1);
  static MultiPoly variable(RingPtr ring, std::size_t index);

  const RingPtr& ring() const noexcept { return ring_; }
  const PrimeField& field() const noexcept { return ring_->field(); }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  // Empty for the zero polynomial.
  std::optional<std::uint32_t> degree() const;
  bool is_homogeneous() const;
  Residue coefficient(const Monomial& m) const;

  MultiPoly operator+(const MultiPoly& other) const;
  MultiPoly operator-(const MultiPoly& other) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& other) const;
  MultiPoly scaled(Residue c) const;
  MultiPoly times_monomial(const Monomial& m, Residue c = 1) const;

  MultiPoly& operator+=(const MultiPoly& other);

  // Exact equality of term maps; rings must be compatible.
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  std::string to_string() const;

 private:
  void require_same_ring(const MultiPoly& other) const;

  RingPtr ring_;
  TermMap terms_;
};

MultiPoly poly_mul(const MultiPoly& f, const MultiPoly& g);

// f^d. Powers of p in d go through the Frobenius (exponent scaling) path.
MultiPoly poly_pow(const MultiPoly& f, std::uint64_t d);

// Plain square-and-multiply, never the Frobenius shortcut.
MultiPoly poly_pow_naive(const MultiPoly& f, std::uint64_t d);

// Term-wise exponent scaling by p: equals f^p in characteristic p.
MultiPoly frobenius(const MultiPoly& f);

// Substitution A_i = x_i^n read backwards: every exponent is divided by n.
// The result lives in a ring with variables A1..An (A, B when n = 2).
MultiPoly compress_exponents(const MultiPoly& f, std::uint32_t n);

// Inverse of compress_exponents into the given ring.
MultiPoly expand_exponents(const MultiPoly& f, std::uint32_t n, RingPtr target);

// Eliminates the last variable: returns f(v1, ..., v_{r-1}, replacement), with the
// replacement given in the ring of the first r - 1 variables.
MultiPoly substitute_last_variable(const MultiPoly& f, const MultiPoly& replacement);

// Parses the canonical text form. Also accepts '-' between terms and a
// leading '-'.
MultiPoly parse_poly(std::string_view text, RingPtr ring);

struct IdealSpec {
  std::vector<MultiPoly> generators;
  std::optional<MultiPoly> relation;

  RingPtr ring() const;
  bool is_homogeneous() const;
};

// Generators raised to the q-th power; q must be a power of the characteristic.
IdealSpec bracket_power(const IdealSpec& ideal, std::uint64_t q);

}  // namespace diaghyp
