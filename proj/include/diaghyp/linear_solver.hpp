#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "diaghyp/exact_arith.hpp"

namespace diaghyp {

// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(PrimeField field, std::size_t rows, std::size_t cols);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  // Reduces the value before storing it.
  void set(std::size_t r, std::size_t c, std::int64_t value) {
    data_[r * cols_ + c] = field_.reduce(value);
  }
  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<Residue> apply(std::span<const Residue> x) const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInteger& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInteger& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  FpMatrix reduce_mod(const PrimeField& field) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<BigInteger> data_;
};

// Row echelon form in place. Pivot rule: first nonzero entry scanning down the
// current column. Pivot rows are normalized to a leading 1 and cleared above
// and below (reduced form). Returns the pivot column of each pivot row.
std::vector<std::size_t> reduce_row_echelon(FpMatrix& m);

struct SolveResult {
  // Free variables are zero.
  std::optional<std::vector<Residue>> solution;
  std::size_t rank = 0;
};

// Solves A x = b. Throws std::invalid_argument when b has the wrong length.
SolveResult solve_mod_p(const FpMatrix& a, std::span<const Residue> b);

Residue determinant_mod_p(const FpMatrix& a);

// Fraction-free elimination; every division is exact.
BigInteger bareiss_determinant(const IntMatrix& a);

}  // namespace diaghyp
