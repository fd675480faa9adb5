#include "diaghyp/multipoly.hpp"

#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace diaghyp {

namespace {

std::uint32_t checked_add(std::uint32_t a, std::uint32_t b) {
  if (a > std::numeric_limits<std::uint32_t>::max() - b) {
    throw std::overflow_error("monomial exponent overflow");
  }
  return a + b;
}

std::uint32_t checked_mul(std::uint32_t a, std::uint64_t b) {
  std::uint64_t r = std::uint64_t{a} * b;
  if (b != 0 && r / b != a) throw std::overflow_error("monomial exponent overflow");
  if (r > std::numeric_limits<std::uint32_t>::max()) {
    throw std::overflow_error("monomial exponent overflow");
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

Monomial::Monomial(std::vector<std::uint32_t> exponents) : exponents_(std::move(exponents)) {
  for (auto e : exponents_) degree_ = checked_add(degree_, e);
}

Monomial Monomial::one(std::size_t arity) {
  return Monomial(std::vector<std::uint32_t>(arity, 0));
}

Monomial Monomial::variable(std::size_t arity, std::size_t index, std::uint32_t power) {
  std::vector<std::uint32_t> e(arity, 0);
  e.at(index) = power;
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > other.exponents_[i]) return false;
  }
  return true;
}

Monomial Monomial::cofactor_in(const Monomial& other) const {
  if (!divides(other)) throw std::logic_error("monomial does not divide");
  std::vector<std::uint32_t> e(exponents_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = other.exponents_[i] - exponents_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (arity() != other.arity()) throw std::invalid_argument("monomial arity mismatch");
  std::vector<std::uint32_t> e(exponents_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(exponents_[i], other.exponents_[i]);
  return Monomial(std::move(e));
}

Monomial Monomial::pow(std::uint32_t power) const {
  std::vector<std::uint32_t> e(exponents_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_mul(exponents_[i], power);
  return Monomial(std::move(e));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  return a.exponents_ <=> b.exponents_;
}

std::vector<Monomial> monomials_of_degree(std::size_t arity, std::uint32_t degree) {
  std::vector<Monomial> out;
  if (arity == 0) {
    if (degree == 0) out.push_back(Monomial::one(0));
    return out;
  }
  std::vector<std::uint32_t> e(arity, 0);
  // Lexicographically decreasing: first variable takes the largest share first.
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 == arity) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (std::uint32_t v = left + 1; v-- > 0;) {
      e[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, degree);
  return out;
}

BigInteger count_monomials(std::size_t arity, std::uint32_t degree) {
  if (arity == 0) return degree == 0 ? 1 : 0;
  return binomial_general(static_cast<std::int64_t>(degree + arity - 1),
                          static_cast<std::int64_t>(arity - 1));
}

PolyRing::PolyRing(PrimeField field, std::vector<std::string> variable_names)
    : field_(field), names_(std::move(variable_names)) {}

RingPtr make_ring(const PrimeField& field, std::vector<std::string> names) {
  return std::make_shared<const PolyRing>(field, std::move(names));
}

RingPtr make_ring(const PrimeField& field, std::size_t arity, std::string_view prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < arity; ++i) names.push_back(std::string(prefix) + std::to_string(i + 1));
  return make_ring(field, std::move(names));
}

MultiPoly::MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

MultiPoly::MultiPoly(RingPtr ring, TermMap terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.arity() != ring_->arity()) throw std::invalid_argument("term arity mismatch");
    if (it->second >= field().modulus()) throw std::invalid_argument("coefficient not reduced");
    it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
}

MultiPoly MultiPoly::constant(RingPtr ring, std::int64_t value) {
  Residue c = ring->field().reduce(value);
  MultiPoly out(ring);
  if (c != 0) out.terms_.emplace(Monomial::one(ring->arity()), c);
  return out;
}

MultiPoly MultiPoly::monomial(RingPtr ring, Monomial m, Residue coefficient) {
  if (m.arity() != ring->arity()) throw std::invalid_argument("monomial arity mismatch");
  MultiPoly out(ring);
  coefficient = ring->field().reduce(static_cast<std::int64_t>(coefficient));
  if (coefficient != 0) out.terms_.emplace(std::move(m), coefficient);
  return out;
}

MultiPoly MultiPoly::variable(RingPtr ring, std::size_t index) {
  auto arity = ring->arity();
  return monomial(std::move(ring), Monomial::variable(arity, index));
}

std::optional<std::uint32_t> MultiPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.degree();
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const auto d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_) {
    if (m.degree() != d) return false;
  }
  return true;
}

Residue MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void MultiPoly::require_same_ring(const MultiPoly& other) const {
  if (!ring_->compatible_with(*other.ring_)) {
    throw std::invalid_argument("polynomials live in different rings (arity or modulus mismatch)");
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  require_same_ring(other);
  const auto& F = field();
  for (const auto& [m, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = F.add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
  MultiPoly out = *this;
  out += other;
  return out;
}

MultiPoly MultiPoly::operator-() const { return scaled(field().neg(1 % field().modulus())); }

MultiPoly MultiPoly::operator-(const MultiPoly& other) const { return *this + (-other); }

MultiPoly MultiPoly::scaled(Residue c) const {
  c = c % field().modulus();
  MultiPoly out(ring_);
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, field().mul(v, c));
  return out;
}

MultiPoly MultiPoly::times_monomial(const Monomial& mono, Residue c) const {
  c = c % field().modulus();
  MultiPoly out(ring_);
  if (c == 0) return out;
  // Multiplying by a monomial preserves grlex order.
  for (const auto& [m, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), m * mono, field().mul(v, c));
  return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
  require_same_ring(other);
  const auto& F = field();
  TermMap acc;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : other.terms_) {
      auto [it, inserted] = acc.try_emplace(m1 * m2, F.mul(c1, c2));
      if (!inserted) it->second = F.add(it->second, F.mul(c1, c2));
    }
  }
  return MultiPoly(ring_, std::move(acc));
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  a.require_same_ring(b);
  return a.terms_ == b.terms_;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  const auto& names = ring_->variable_names();
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool wrote = false;
    if (c != 1 || m.degree() == 0) {
      os << c;
      wrote = true;
    }
    for (std::size_t i = 0; i < m.arity(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << '*';
      os << names[i];
      if (m[i] != 1) os << '^' << m[i];
      wrote = true;
    }
  }
  return os.str();
}

MultiPoly poly_mul(const MultiPoly& f, const MultiPoly& g) { return f * g; }

MultiPoly frobenius(const MultiPoly& f) {
  const auto p = f.field().modulus();
  MultiPoly::TermMap out;
  // c^p = c in F_p; scaling every exponent by p keeps grlex order.
  for (const auto& [m, c] : f.terms()) out.emplace_hint(out.end(), m.pow(p), c);
  return MultiPoly(f.ring(), std::move(out));
}

MultiPoly poly_pow_naive(const MultiPoly& f, std::uint64_t d) {
  MultiPoly result = MultiPoly::constant(f.ring(), 1);
  MultiPoly base = f;
  while (d > 0) {
    if (d & 1) result = result * base;
    d >>= 1;
    if (d > 0) base = base * base;
  }
  return result;
}

MultiPoly poly_pow(const MultiPoly& f, std::uint64_t d) {
  if (d == 0) return MultiPoly::constant(f.ring(), 1);
  const auto p = f.field().modulus();
  MultiPoly base = f;
  while (d % p == 0) {
    base = frobenius(base);
    d /= p;
  }
  return poly_pow_naive(base, d);
}

namespace {

RingPtr compressed_ring(const RingPtr& ring) {
  if (ring->arity() == 2) return make_ring(ring->field(), {"A", "B"});
  return make_ring(ring->field(), ring->arity(), "A");
}

}  // namespace

MultiPoly compress_exponents(const MultiPoly& f, std::uint32_t n) {
  if (n == 0) throw PreconditionError("compress_exponents needs n >= 1");
  MultiPoly::TermMap out;
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::uint32_t> e(m.arity());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (m[i] % n != 0) {
        throw PreconditionError("exponent " + std::to_string(m[i]) + " is not divisible by " +
                                std::to_string(n));
      }
      e[i] = m[i] / n;
    }
    out.emplace(Monomial(std::move(e)), c);
  }
  return MultiPoly(compressed_ring(f.ring()), std::move(out));
}

MultiPoly expand_exponents(const MultiPoly& f, std::uint32_t n, RingPtr target) {
  if (!target->compatible_with(*f.ring())) throw std::invalid_argument("target ring mismatch");
  MultiPoly::TermMap out;
  for (const auto& [m, c] : f.terms()) out.emplace(m.pow(n), c);
  return MultiPoly(std::move(target), std::move(out));
}

MultiPoly substitute_last_variable(const MultiPoly& f, const MultiPoly& replacement) {
  const std::size_t r = f.ring()->arity();
  if (r == 0 || replacement.ring()->arity() + 1 != r ||
      !(replacement.field() == f.field())) {
    throw std::invalid_argument("replacement must live in the ring of the first r - 1 variables");
  }
  std::map<std::uint32_t, MultiPoly> powers;
  MultiPoly out(replacement.ring());
  for (const auto& [m, c] : f.terms()) {
    auto head = m.exponents().first(r - 1);
    Monomial rest(std::vector<std::uint32_t>(head.begin(), head.end()));
    auto it = powers.find(m[r - 1]);
    if (it == powers.end()) it = powers.emplace(m[r - 1], poly_pow(replacement, m[r - 1])).first;
    out += it->second.times_monomial(rest, c);
  }
  return out;
}

MultiPoly parse_poly(std::string_view text, RingPtr ring) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ring->arity(); ++i) index.emplace(ring->variable_names()[i], i);
  const auto& F = ring->field();

  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw std::invalid_argument("empty polynomial text");

  auto fail = [&](const std::string& why) -> void {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  auto read_uint = [&](std::size_t& pos) -> std::uint64_t {
    std::size_t start = pos;
    std::uint64_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) fail("integer too large");
      v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
      ++pos;
    }
    if (pos == start) fail("expected an integer at offset " + std::to_string(start));
    return v;
  };

  MultiPoly out(ring);
  if (s == "0") return out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      fail("expected '+' or '-' at offset " + std::to_string(pos));
    }
    Residue coeff = 1;
    std::vector<std::uint32_t> e(ring->arity(), 0);
    bool expect_factor = true;
    while (expect_factor) {
      if (pos >= s.size()) fail("dangling operator");
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        std::uint64_t v = read_uint(pos);
        coeff = F.mul(coeff, static_cast<Residue>(v % F.modulus()));
      } else {
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != '*' && s[pos] != '^' && s[pos] != '+' && s[pos] != '-') ++pos;
        auto it = index.find(s.substr(start, pos - start));
        if (it == index.end()) fail("unknown variable '" + s.substr(start, pos - start) + "'");
        std::uint64_t power = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          power = read_uint(pos);
        }
        if (power > std::numeric_limits<std::uint32_t>::max()) fail("exponent too large");
        e[it->second] = checked_add(e[it->second], static_cast<std::uint32_t>(power));
      }
      expect_factor = pos < s.size() && s[pos] == '*';
      if (expect_factor) ++pos;
    }
    if (negative) coeff = F.neg(coeff);
    out += MultiPoly::monomial(ring, Monomial(std::move(e)), coeff);
  }
  return out;
}

RingPtr IdealSpec::ring() const {
  if (!generators.empty()) return generators.front().ring();
  if (relation) return relation->ring();
  return nullptr;
}

bool IdealSpec::is_homogeneous() const {
  for (const auto& g : generators) {
    if (!g.is_homogeneous()) return false;
  }
  return !relation || relation->is_homogeneous();
}

IdealSpec bracket_power(const IdealSpec& ideal, std::uint64_t q) {
  auto ring = ideal.ring();
  if (!ring) return ideal;
  const std::uint64_t p = ring->field().modulus();
  std::uint64_t rest = q;
  while (rest > 1 && rest % p == 0) rest /= p;
  if (q == 0 || rest != 1) {
    throw PreconditionError(std::to_string(q) + " is not a power of the characteristic " +
                            std::to_string(p));
  }
  IdealSpec out;
  out.relation = ideal.relation;
  for (const auto& g : ideal.generators) out.generators.push_back(poly_pow(g, q));
  return out;
}

}  // namespace diaghyp
