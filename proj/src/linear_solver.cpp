#include "diaghyp/linear_solver.hpp"

#include <stdexcept>
#include <utility>

namespace diaghyp {

FpMatrix::FpMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

std::vector<Residue> FpMatrix::apply(std::span<const Residue> x) const {
  if (x.size() != cols_) throw std::invalid_argument("vector length does not match column count");
  std::vector<Residue> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc = (acc + std::uint64_t{(*this)(r, c)} * x[c]) % field_.modulus();
    }
    out[r] = static_cast<Residue>(acc);
  }
  return out;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

FpMatrix IntMatrix::reduce_mod(const PrimeField& field) const {
  FpMatrix out(field, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.row(r)[c] = field.reduce((*this)(r, c));
  }
  return out;
}

namespace {

// row_target -= factor * row_source, over columns [from, cols).
void axpy(const PrimeField& F, std::span<Residue> target, std::span<const Residue> source,
          Residue factor, std::size_t from) {
  if (factor == 0) return;
  const std::uint64_t p = F.modulus();
  const std::uint64_t neg = p - factor;
  for (std::size_t c = from; c < target.size(); ++c) {
    if (source[c] == 0) continue;
    target[c] = static_cast<Residue>((target[c] + neg * source[c]) % p);
  }
}

}  // namespace

std::vector<std::size_t> reduce_row_echelon(FpMatrix& m) {
  const auto& F = m.field();
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t found = m.rows();
    for (std::size_t r = pivot_row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        found = r;
        break;
      }
    }
    if (found == m.rows()) continue;
    if (found != pivot_row) {
      auto a = m.row(found);
      auto b = m.row(pivot_row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = m.row(pivot_row);
    const Residue scale = F.inv(prow[col]);
    for (std::size_t c = col; c < m.cols(); ++c) prow[c] = F.mul(prow[c], scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot_row) continue;
      auto target = m.row(r);
      axpy(F, target, prow, target[col], col);
    }
    pivots.push_back(col);
    ++pivot_row;
  }
  return pivots;
}

SolveResult solve_mod_p(const FpMatrix& a, std::span<const Residue> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length does not match row count");
  const auto& F = a.field();
  FpMatrix aug(F, a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto src = a.row(r);
    auto dst = aug.row(r);
    std::copy(src.begin(), src.end(), dst.begin());
    dst[a.cols()] = b[r] % F.modulus();
  }
  auto pivots = reduce_row_echelon(aug);

  SolveResult result;
  result.rank = pivots.size();
  if (!pivots.empty() && pivots.back() == a.cols()) {
    // Pivot in the augmented column: inconsistent.
    result.rank -= 1;
    return result;
  }
  std::vector<Residue> x(a.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  result.solution = std::move(x);
  return result;
}

Residue determinant_mod_p(const FpMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const auto& F = a.field();
  FpMatrix m = a;
  Residue det = 1 % F.modulus();
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t found = n;
    for (std::size_t r = col; r < n; ++r) {
      if (m(r, col) != 0) {
        found = r;
        break;
      }
    }
    if (found == n) return 0;
    if (found != col) {
      auto x = m.row(found);
      auto y = m.row(col);
      std::swap_ranges(x.begin(), x.end(), y.begin());
      det = F.neg(det);
    }
    auto prow = m.row(col);
    det = F.mul(det, prow[col]);
    const Residue inv = F.inv(prow[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      auto target = m.row(r);
      axpy(F, target, prow, F.mul(target[col], inv), col);
    }
  }
  return det;
}

BigInteger bareiss_determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  BigInteger prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t found = n;
      for (std::size_t r = k + 1; r < n; ++r) {
        if (m(r, k) != 0) {
          found = r;
          break;
        }
      }
      if (found == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(found, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInteger t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  BigInteger det = m(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

}  // namespace diaghyp
