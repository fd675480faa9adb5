#pragma once

/*
 * Homogeneous ideal membership by degree-by-degree linear algebra.
 *
 * For homogeneous h of degree d and homogeneous generators g_1..g_s, h lies in
 * (g_1, ..., g_s) exactly when h lies in the span of the Macaulay rows
 * m * g_j with deg m = d - deg g_j. Membership in the quotient S/(f) for a
 * homogeneous relation f is the same question with f adjoined as one more
 * generator: any representation h = sum a_j g_j + b f can be truncated to its
 * degree-d component.
 *
 * Two reductions keep desk-scale systems small, both exact:
 *  - Single-term generators span coordinate subspaces. Those columns are
 *    dropped, together with rows whose multiplier already lies in the monomial
 *    ideal; their coefficients are recovered afterwards by monomial division.
 *  - The system splits into connected blocks of the row/column incidence
 *    graph. Only the block touching supp(h) can matter, since every other
 *    block has a zero right-hand side.
 * Both can be switched off, which yields the textbook Macaulay matrix.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "diaghyp/multipoly.hpp"

namespace diaghyp {

struct MacaulayOptions {
  bool reduce_monomial_generators = true;
  bool restrict_to_component = true;
  // Upper bound on the number of columns; DeskScaleExceeded beyond it.
  std::size_t max_columns = 20000;
};

struct MembershipWitness {
  // One coefficient per generator, in generator order.
  std::vector<MultiPoly> generator_coefficients;
  // Coefficient of the hypersurface relation, when the ideal carries one.
  std::optional<MultiPoly> relation_coefficient;

  MultiPoly combination(const IdealSpec& ideal) const;
  bool reexpands_to(const MultiPoly& h, const IdealSpec& ideal) const;
};

struct NotMember {
  std::uint32_t degree = 0;
  std::size_t rank = 0;
  std::size_t columns = 0;
  std::size_t unknowns = 0;
};

using MembershipResult = std::variant<MembershipWitness, NotMember>;

inline bool is_member(const MembershipResult& r) {
  return std::holds_alternative<MembershipWitness>(r);
}

// Ignores ideal.relation. Throws PreconditionError on inhomogeneous input.
MembershipResult macaulay_membership(const MultiPoly& h, const IdealSpec& ideal,
                                     const MacaulayOptions& options = {});

// Membership of h in (generators, relation); the witness fills relation_coefficient.
MembershipResult quotient_membership(const MultiPoly& h, const IdealSpec& ideal,
                                     const MacaulayOptions& options = {});

struct MonomialStatus {
  // Exponent of the first variable; the second is degree - a_exponent.
  std::uint32_t a_exponent = 0;
  bool in_ideal = false;

  friend bool operator==(const MonomialStatus&, const MonomialStatus&) = default;
};

struct ContainmentReport {
  std::uint32_t degree = 0;
  bool contained = false;
  std::size_t rank = 0;
  // All degree + 1 monomials, A^d first.
  std::vector<MonomialStatus> monomials;

  std::vector<std::uint32_t> failing() const;

  friend bool operator==(const ContainmentReport&, const ContainmentReport&) = default;
};

// Dense entry cap of the containment system; DeskScaleExceeded beyond it.
inline constexpr std::size_t kContainmentMaxEntries = std::size_t{1} << 20;

// Decides (A, B)^d in I for a homogeneous ideal of a two-variable ring by
// row-reducing the full degree-d Macaulay matrix once and testing every unit
// vector against the row space.
ContainmentReport power_span_containment(std::uint32_t degree, const IdealSpec& ideal);

struct ImplicationReport {
  bool premise = false;
  bool conclusion = false;

  bool holds() const { return !premise || conclusion; }
};

// Desk-scale cap on the degree-d monomial count of either side.
inline constexpr std::size_t kInductionStepMaxColumns = 50000;

// Decides both sides of the induction step across variables:
//   premise:    (A_1...A_{r-1})^a (A_1+...+A_{r-1})^b
//                 in I_{r-1, a+c} + (A_1+...+A_{r-1})^{a+c}
//   conclusion: (A_1...A_r)^a (A_1+...+A_r)^{b+c-1}
//                 in I_{r, a+c} + (A_1+...+A_r)^{a+c}
// where I_{r,i} = (A_1^i, ..., A_r^i), over F_p.
ImplicationReport induce_step_check(std::uint32_t alpha, std::uint32_t beta, std::uint32_t gamma,
                                    std::uint32_t r, std::int64_t p);

}  // namespace diaghyp
