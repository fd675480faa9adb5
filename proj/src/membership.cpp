#include "diaghyp/membership.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>

#include "diaghyp/linear_solver.hpp"

namespace diaghyp {

MultiPoly MembershipWitness::combination(const IdealSpec& ideal) const {
  if (generator_coefficients.size() != ideal.generators.size()) {
    throw std::invalid_argument("witness has " + std::to_string(generator_coefficients.size()) +
                                " coefficients for " + std::to_string(ideal.generators.size()) +
                                " generators");
  }
  if (relation_coefficient.has_value() != ideal.relation.has_value()) {
    throw std::invalid_argument("witness and ideal disagree on the hypersurface relation");
  }
  MultiPoly sum(ideal.ring());
  for (std::size_t j = 0; j < generator_coefficients.size(); ++j) {
    sum += generator_coefficients[j] * ideal.generators[j];
  }
  if (relation_coefficient) sum += *relation_coefficient * *ideal.relation;
  return sum;
}

bool MembershipWitness::reexpands_to(const MultiPoly& h, const IdealSpec& ideal) const {
  return combination(ideal) == h;
}

std::vector<std::uint32_t> ContainmentReport::failing() const {
  std::vector<std::uint32_t> out;
  for (const auto& m : monomials) {
    if (!m.in_ideal) out.push_back(m.a_exponent);
  }
  return out;
}

namespace {

struct RowKey {
  std::size_t generator;
  Monomial multiplier;
};

struct RowKeyOrder {
  bool operator()(const RowKey& a, const RowKey& b) const {
    if (a.generator != b.generator) return a.generator < b.generator;
    return a.multiplier > b.multiplier;
  }
};

struct MonomialGenerator {
  std::size_t index;
  Monomial monomial;
  Residue coefficient;
};

void require_homogeneous(const MultiPoly& h, const std::vector<MultiPoly>& gens) {
  if (!h.is_homogeneous()) throw PreconditionError("membership target is not homogeneous");
  for (const auto& g : gens) {
    if (!g.ring()->compatible_with(*h.ring())) {
      throw std::invalid_argument("generator lives in a different ring (arity or modulus mismatch)");
    }
    if (!g.is_homogeneous()) throw PreconditionError("generator " + g.to_string() + " is not homogeneous");
  }
}

// Core solver over an explicit generator list. Returns one coefficient per generator.
std::variant<std::vector<MultiPoly>, NotMember> solve_membership(const MultiPoly& h,
                                                                 const std::vector<MultiPoly>& gens,
                                                                 const MacaulayOptions& options) {
  require_homogeneous(h, gens);
  const auto& ring = h.ring();
  const auto& F = h.field();
  std::vector<MultiPoly> coeffs(gens.size(), MultiPoly(ring));
  if (h.is_zero()) return coeffs;
  const std::uint32_t d = *h.degree();

  std::vector<MonomialGenerator> monomial_gens;
  std::vector<std::size_t> row_gens;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].is_zero() || *gens[j].degree() > d) continue;
    if (options.reduce_monomial_generators && gens[j].term_count() == 1) {
      const auto& [m, c] = *gens[j].terms().begin();
      monomial_gens.push_back({j, m, c});
    } else {
      row_gens.push_back(j);
    }
  }
  auto in_monomial_ideal = [&](const Monomial& u) {
    for (const auto& g : monomial_gens) {
      if (g.monomial.divides(u)) return true;
    }
    return false;
  };

  std::map<Monomial, std::size_t, std::greater<>> columns;
  std::set<RowKey, RowKeyOrder> rows;
  auto add_column = [&](const Monomial& u) {
    bool inserted = columns.emplace(u, 0).second;
    if (columns.size() > options.max_columns) {
      throw DeskScaleExceeded("Macaulay system exceeds " + std::to_string(options.max_columns) +
                              " columns at degree " + std::to_string(d));
    }
    return inserted;
  };

  if (options.restrict_to_component) {
    std::deque<Monomial> queue;
    for (const auto& [u, c] : h.terms()) {
      if (!in_monomial_ideal(u) && add_column(u)) queue.push_back(u);
    }
    while (!queue.empty()) {
      Monomial u = std::move(queue.front());
      queue.pop_front();
      for (std::size_t j : row_gens) {
        for (const auto& [t, c] : gens[j].terms()) {
          if (!t.divides(u)) continue;
          Monomial mult = t.cofactor_in(u);
          if (in_monomial_ideal(mult)) continue;
          if (!rows.insert({j, mult}).second) continue;
          for (const auto& [t2, c2] : gens[j].terms()) {
            Monomial v = mult * t2;
            if (!in_monomial_ideal(v) && add_column(v)) queue.push_back(std::move(v));
          }
        }
      }
    }
  } else {
    if (count_monomials(ring->arity(), d) > options.max_columns) {
      throw DeskScaleExceeded("Macaulay system exceeds " + std::to_string(options.max_columns) +
                              " columns at degree " + std::to_string(d));
    }
    for (auto& u : monomials_of_degree(ring->arity(), d)) {
      if (!in_monomial_ideal(u)) add_column(u);
    }
    for (std::size_t j : row_gens) {
      for (auto& mult : monomials_of_degree(ring->arity(), d - *gens[j].degree())) {
        if (!in_monomial_ideal(mult)) rows.insert({j, std::move(mult)});
      }
    }
  }

  std::size_t next = 0;
  for (auto& [u, idx] : columns) idx = next++;

  const std::vector<RowKey> unknowns(rows.begin(), rows.end());
  FpMatrix system(F, columns.size(), unknowns.size());
  for (std::size_t ri = 0; ri < unknowns.size(); ++ri) {
    for (const auto& [t, c] : gens[unknowns[ri].generator].terms()) {
      auto it = columns.find(unknowns[ri].multiplier * t);
      if (it != columns.end()) system.row(it->second)[ri] = c;
    }
  }
  std::vector<Residue> rhs(columns.size(), 0);
  for (const auto& [u, c] : h.terms()) {
    auto it = columns.find(u);
    if (it != columns.end()) rhs[it->second] = c;
  }

  SolveResult solved = solve_mod_p(system, rhs);
  if (!solved.solution) {
    return NotMember{d, solved.rank, columns.size(), unknowns.size()};
  }
  for (std::size_t ri = 0; ri < unknowns.size(); ++ri) {
    Residue x = (*solved.solution)[ri];
    if (x != 0) coeffs[unknowns[ri].generator] += MultiPoly::monomial(ring, unknowns[ri].multiplier, x);
  }

  MultiPoly residual = h;
  for (std::size_t j : row_gens) residual = residual - coeffs[j] * gens[j];
  for (const auto& [u, c] : residual.terms()) {
    bool placed = false;
    for (const auto& g : monomial_gens) {
      if (!g.monomial.divides(u)) continue;
      coeffs[g.index] += MultiPoly::monomial(ring, g.monomial.cofactor_in(u), F.mul(c, F.inv(g.coefficient)));
      placed = true;
      break;
    }
    if (!placed) throw std::logic_error("Macaulay solution leaves a residual term outside the monomial ideal");
  }
  return coeffs;
}

}  // namespace

MembershipResult macaulay_membership(const MultiPoly& h, const IdealSpec& ideal,
                                     const MacaulayOptions& options) {
  if (ideal.generators.empty()) {
    if (!h.is_homogeneous()) throw PreconditionError("membership target is not homogeneous");
    if (h.is_zero()) return MembershipWitness{};
    return NotMember{*h.degree(), 0, h.term_count(), 0};
  }
  auto solved = solve_membership(h, ideal.generators, options);
  if (auto* nm = std::get_if<NotMember>(&solved)) return *nm;
  MembershipWitness witness{std::get<std::vector<MultiPoly>>(std::move(solved)), std::nullopt};
  IdealSpec plain{ideal.generators, std::nullopt};
  if (!witness.reexpands_to(h, plain)) throw std::logic_error("membership witness failed re-expansion");
  return witness;
}

MembershipResult quotient_membership(const MultiPoly& h, const IdealSpec& ideal,
                                     const MacaulayOptions& options) {
  if (!ideal.relation) throw PreconditionError("quotient membership needs a hypersurface relation");
  std::vector<MultiPoly> gens = ideal.generators;
  gens.push_back(*ideal.relation);
  auto solved = solve_membership(h, gens, options);
  if (auto* nm = std::get_if<NotMember>(&solved)) return *nm;
  auto coeffs = std::get<std::vector<MultiPoly>>(std::move(solved));
  MembershipWitness witness;
  witness.relation_coefficient = std::move(coeffs.back());
  coeffs.pop_back();
  witness.generator_coefficients = std::move(coeffs);
  if (!witness.reexpands_to(h, ideal)) throw std::logic_error("membership witness failed re-expansion");
  return witness;
}

ContainmentReport power_span_containment(std::uint32_t degree, const IdealSpec& ideal) {
  auto ring = ideal.ring();
  if (!ring || ring->arity() != 2) throw PreconditionError("power_span_containment needs a two-variable ring");
  if (!ideal.is_homogeneous()) throw PreconditionError("containment ideal is not homogeneous");
  const auto& F = ring->field();

  std::vector<std::pair<const MultiPoly*, Monomial>> row_list;
  for (const auto& g : ideal.generators) {
    if (g.is_zero() || *g.degree() > degree) continue;
    for (auto& mult : monomials_of_degree(2, degree - *g.degree())) row_list.emplace_back(&g, std::move(mult));
  }
  if (row_list.size() * (std::size_t{degree} + 1) > kContainmentMaxEntries) {
    throw DeskScaleExceeded("containment system at degree " + std::to_string(degree) + " has " +
                            std::to_string(row_list.size()) + " rows, beyond desk scale");
  }
  // Column i is A^(degree - i) B^i.
  FpMatrix span(F, row_list.size(), degree + 1);
  for (std::size_t r = 0; r < row_list.size(); ++r) {
    for (const auto& [t, c] : row_list[r].first->terms()) {
      Monomial v = row_list[r].second * t;
      span.row(r)[degree - v[0]] = c;
    }
  }
  auto pivots = reduce_row_echelon(span);

  ContainmentReport report;
  report.degree = degree;
  report.rank = pivots.size();
  report.contained = true;
  for (std::uint32_t col = 0; col <= degree; ++col) {
    std::vector<Residue> v(degree + 1, 0);
    v[col] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      Residue factor = v[pivots[i]];
      if (factor == 0) continue;
      auto prow = span.row(i);
      for (std::size_t c = 0; c <= degree; ++c) v[c] = F.sub(v[c], F.mul(factor, prow[c]));
    }
    bool in = std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
    report.monomials.push_back({degree - col, in});
    report.contained = report.contained && in;
  }
  return report;
}

namespace {

bool decide_induction_side(std::uint32_t vars, std::uint32_t alpha, std::uint32_t sum_power,
                           std::uint32_t ideal_power, const PrimeField& field) {
  auto ring = make_ring(field, vars, "A");
  const std::uint32_t target_degree = vars * alpha + sum_power;
  if (count_monomials(vars, target_degree) > kInductionStepMaxColumns) {
    throw DeskScaleExceeded("induction-step instance exceeds the desk-scale bound");
  }
  MultiPoly sum(ring);
  for (std::size_t i = 0; i < vars; ++i) sum += MultiPoly::variable(ring, i);
  MultiPoly product = MultiPoly::monomial(ring, Monomial(std::vector<std::uint32_t>(vars, alpha)));
  MultiPoly h = product * poly_pow(sum, sum_power);
  IdealSpec ideal;
  for (std::size_t i = 0; i < vars; ++i) {
    ideal.generators.push_back(MultiPoly::monomial(ring, Monomial::variable(vars, i, ideal_power)));
  }
  ideal.generators.push_back(poly_pow(sum, ideal_power));
  MacaulayOptions options;
  options.max_columns = kInductionStepMaxColumns;
  return is_member(macaulay_membership(h, ideal, options));
}

}  // namespace

ImplicationReport induce_step_check(std::uint32_t alpha, std::uint32_t beta, std::uint32_t gamma,
                                    std::uint32_t r, std::int64_t p) {
  if (alpha == 0 || beta == 0 || gamma == 0) throw PreconditionError("alpha, beta, gamma must be positive");
  if (r < 2) throw PreconditionError("induction step needs r >= 2");
  PrimeField field(p);
  ImplicationReport report;
  report.premise = decide_induction_side(r - 1, alpha, beta, alpha + gamma, field);
  report.conclusion = decide_induction_side(r, alpha, beta + gamma - 1, alpha + gamma, field);
  return report;
}

}  // namespace diaghyp
