#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "weakcomm/presentation.hpp"

namespace weakcomm {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::size_t rows, std::size_t cols, const std::vector<long>& values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Nonzero diagonal of the Smith normal form (d1 | d2 | ..., all positive) and
/// the free rank cols - rank of the cokernel Z^cols / rowspace.
struct SmithForm {
  std::vector<mpz_class> factors;
  std::size_t free_rank = 0;

  std::size_t rank() const { return factors.size(); }
};

SmithForm smith_normal_form(IntegerMatrix m);

/// Relator exponent-sum matrix: one row per relator, one column per generator.
IntegerMatrix relation_matrix(const Presentation& p);

/// Invariants of G/[G,G] as a SmithForm of the relation matrix.
SmithForm abelianization(const Presentation& p);

bool is_perfect(const Presentation& p);

/// Human-readable abelian invariants, e.g. "Z/2 x Z/2", "Z^1", "trivial".
std::string describe_abelian(const SmithForm& form);

}  // namespace weakcomm
