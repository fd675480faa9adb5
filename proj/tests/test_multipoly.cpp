#include "doctest.h"

#include <random>

#include "diaghyp/errors.hpp"
#include "diaghyp/multipoly.hpp"

using namespace diaghyp;

namespace {

RingPtr ab_ring(std::int64_t p) { return make_ring(PrimeField(p), {"A", "B"}); }

MultiPoly P(const RingPtr& ring, const char* text) { return parse_poly(text, ring); }

MultiPoly random_poly(const RingPtr& ring, std::mt19937& rng, std::size_t max_terms, std::uint32_t max_exp,
                      bool homogeneous_degree = false) {
  std::uniform_int_distribution<std::uint32_t> ex(0, max_exp);
  std::uniform_int_distribution<std::int64_t> co(1, ring->field().modulus() - 1);
  std::uniform_int_distribution<std::size_t> count(1, max_terms);
  MultiPoly out(ring);
  const std::size_t terms = count(rng);
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> e(ring->arity());
    if (homogeneous_degree) {
      // spread max_exp over the variables
      std::uint32_t left = max_exp;
      for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        e[i] = std::uniform_int_distribution<std::uint32_t>(0, left)(rng);
        left -= e[i];
      }
      e.back() = left;
    } else {
      for (auto& v : e) v = ex(rng);
    }
    out += MultiPoly::monomial(ring, Monomial(e), static_cast<Residue>(co(rng)));
  }
  return out;
}

}  // namespace

TEST_CASE("grlex order: degree first, then lexicographic") {
  Monomial a2({2, 0}), ab({1, 1}), b2({0, 2}), a({1, 0});
  CHECK(a2 > ab);
  CHECK(ab > b2);
  CHECK(b2 > a);
  auto deg2 = monomials_of_degree(2, 2);
  REQUIRE(deg2.size() == 3);
  CHECK(deg2[0] == a2);
  CHECK(deg2[2] == b2);
  CHECK(count_monomials(3, 4) == 15);
  CHECK(monomials_of_degree(3, 4).size() == 15);
}

TEST_CASE("monomial division") {
  Monomial m({2, 1, 0}), n({3, 1, 4});
  CHECK(m.divides(n));
  CHECK_FALSE(n.divides(m));
  CHECK(m.cofactor_in(n) == Monomial({1, 0, 4}));
  CHECK(m * m.cofactor_in(n) == n);
}

TEST_CASE("poly_mul examples") {
  auto f2 = ab_ring(2);
  CHECK(poly_mul(P(f2, "A + B"), P(f2, "A + B")) == P(f2, "A^2 + B^2"));
  auto f7 = ab_ring(7);
  CHECK(poly_mul(P(f7, "A + B"), P(f7, "A")) == P(f7, "A^2 + A*B"));
  CHECK(poly_mul(P(f7, "A^2*B + A*B^2"), MultiPoly::constant(f7, 1)) == P(f7, "A^2*B + A*B^2"));
}

TEST_CASE("poly_pow examples") {
  auto f2 = ab_ring(2);
  CHECK(poly_pow(P(f2, "A + B"), 5) == P(f2, "A^5 + A^4*B + A*B^4 + B^5"));
  CHECK(poly_pow(P(f2, "A + B"), 0) == MultiPoly::constant(f2, 1));
  auto f5 = ab_ring(5);
  CHECK(poly_pow(P(f5, "A + B"), 3) == P(f5, "A^3 + 3*A^2*B + 3*A*B^2 + B^3"));
}

TEST_CASE("canonical text round trip") {
  auto ring = make_ring(PrimeField(7), 3, "x");
  auto f = P(ring, "3*x1^2*x2 + x3^3 - 1 + 8*x1");
  CHECK(f.to_string() == "3*x1^2*x2 + x3^3 + x1 + 6");
  CHECK(parse_poly(f.to_string(), ring) == f);
  CHECK(MultiPoly(ring).to_string() == "0");
  CHECK(parse_poly("0", ring).is_zero());
  CHECK_THROWS_AS(parse_poly("x4", ring), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("x1 +", ring), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("", ring), std::invalid_argument);
}

TEST_CASE("zero polynomial has no degree") {
  auto ring = ab_ring(5);
  MultiPoly zero(ring);
  CHECK_FALSE(zero.degree().has_value());
  CHECK(zero.is_homogeneous());
  CHECK(P(ring, "A - A").is_zero());
  CHECK(P(ring, "A^2 + B").degree() == 2u);
  CHECK_FALSE(P(ring, "A^2 + B").is_homogeneous());
}

TEST_CASE("operations across rings are rejected") {
  auto r5 = ab_ring(5);
  auto r7 = ab_ring(7);
  CHECK_THROWS(P(r5, "A") + P(r7, "A"));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(20240601);
  for (std::int64_t p : {2, 3, 5, 7}) {
    auto ring = make_ring(PrimeField(p), 3, "x");
    for (int trial = 0; trial < 25; ++trial) {
      auto f = random_poly(ring, rng, 5, 3);
      auto g = random_poly(ring, rng, 5, 3);
      auto h = random_poly(ring, rng, 5, 3);
      CHECK(f * g == g * f);
      CHECK((f * g) * h == f * (g * h));
      CHECK(f * (g + h) == f * g + f * h);
      CHECK(f + g == g + f);
      CHECK((f - f).is_zero());
    }
  }
}

TEST_CASE("poly_pow matches repeated multiplication") {
  std::mt19937 rng(77);
  for (std::int64_t p : {2, 3, 5, 7}) {
    auto ring = make_ring(PrimeField(p), 3, "x");
    for (int trial = 0; trial < 20; ++trial) {
      auto f = random_poly(ring, rng, 5, 2);
      MultiPoly acc = f;
      for (std::int64_t i = 1; i < p; ++i) acc = poly_mul(acc, f);
      CHECK(poly_pow(f, static_cast<std::uint64_t>(p)) == acc);
      CHECK(poly_pow(f, 11) == poly_pow_naive(f, 11));
      CHECK(frobenius(f) == poly_pow(f, static_cast<std::uint64_t>(p)));
    }
  }
}

TEST_CASE("products of homogeneous polynomials stay homogeneous") {
  std::mt19937 rng(3);
  auto ring = make_ring(PrimeField(5), 3, "x");
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_poly(ring, rng, 4, 3, true);
    auto g = random_poly(ring, rng, 4, 2, true);
    REQUIRE(f.is_homogeneous());
    REQUIRE(g.is_homogeneous());
    auto fg = f * g;
    CHECK(fg.is_homogeneous());
    if (!fg.is_zero()) CHECK(*fg.degree() == *f.degree() + *g.degree());
    auto f3 = poly_pow(f, 3);
    CHECK(f3.is_homogeneous());
    if (!f3.is_zero()) CHECK(*f3.degree() == 3 * *f.degree());
  }
}

TEST_CASE("compress_exponents") {
  auto ring = make_ring(PrimeField(7), 3, "x");
  auto a = compress_exponents(P(ring, "x1^6*x2^3*x3^3"), 3);
  CHECK(a.to_string() == "A1^2*A2*A3");
  CHECK(compress_exponents(P(ring, "x1^3 + x2^3 + x3^3"), 3).to_string() == "A1 + A2 + A3");
  CHECK_THROWS_AS(compress_exponents(P(ring, "x1^2*x2"), 3), PreconditionError);

  auto two = make_ring(PrimeField(7), 2, "x");
  CHECK(compress_exponents(P(two, "x1^4*x2^2"), 2).to_string() == "A^2*B");
}

TEST_CASE("compress and expand round trip on variable powers") {
  auto ring = make_ring(PrimeField(5), 4, "x");
  for (std::uint32_t n = 1; n <= 5; ++n) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::uint32_t d = 0; d <= 4; ++d) {
        auto f = poly_pow(MultiPoly::variable(ring, i), n * d);
        auto c = compress_exponents(f, n);
        CHECK(expand_exponents(c, n, ring) == f);
      }
    }
  }
}

TEST_CASE("substitute_last_variable") {
  auto r3 = make_ring(PrimeField(7), 3, "A");
  auto r2 = make_ring(PrimeField(7), 2, "A");
  auto minus_sum = -(P(r2, "A1") + P(r2, "A2"));
  CHECK(substitute_last_variable(P(r3, "A1 + A2 + A3"), minus_sum).is_zero());
  CHECK(substitute_last_variable(P(r3, "A3^2"), minus_sum) == P(r2, "A1^2 + 2*A1*A2 + A2^2"));
}

TEST_CASE("bracket_power examples") {
  auto f2 = make_ring(PrimeField(2), {"x", "y", "z"});
  IdealSpec sq{{P(f2, "x^2"), P(f2, "y^2"), P(f2, "z^2")}, std::nullopt};
  auto b = bracket_power(sq, 8);
  REQUIRE(b.generators.size() == 3);
  CHECK(b.generators[0] == P(f2, "x^16"));
  CHECK(b.generators[2] == P(f2, "z^16"));

  auto one = bracket_power(sq, 1);
  CHECK(one.generators[1] == sq.generators[1]);

  auto f7 = make_ring(PrimeField(7), {"x", "y", "z"});
  IdealSpec sq7{{P(f7, "x^2"), P(f7, "y^2"), P(f7, "z^2")}, std::nullopt};
  CHECK(bracket_power(sq7, 7).generators[1] == P(f7, "y^14"));
  CHECK_THROWS_AS(bracket_power(sq7, 6), PreconditionError);

  // Frobenius is additive, so the bracket power of a sum splits.
  IdealSpec sum{{P(f7, "x + y")}, std::nullopt};
  CHECK(bracket_power(sum, 49).generators[0] == P(f7, "x^49 + y^49"));
}

TEST_CASE("checked exponent overflow") {
  Monomial big({4000000000u});
  CHECK_THROWS(big * big);
  CHECK_THROWS(big.pow(2));
}
