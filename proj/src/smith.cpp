#include "weakcomm/smith.hpp"

#include <stdexcept>
#include <utility>

namespace weakcomm {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols, const std::vector<long>& values)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (values.size() != rows * cols) throw std::invalid_argument("IntegerMatrix: value count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) data_[i] = values[i];
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

SmithForm smith_normal_form(IntegerMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithForm form;
  mpz_class q;
  std::size_t t = 0;
  for (; t < rows && t < cols; ++t) {
    for (;;) {
      // Pivot: entry of least absolute value in the trailing block.
      std::size_t pr = rows;
      std::size_t pc = cols;
      for (std::size_t r = t; r < rows; ++r) {
        for (std::size_t c = t; c < cols; ++c) {
          if (sgn(m(r, c)) == 0) continue;
          if (pr == rows || mpz_cmpabs(m(r, c).get_mpz_t(), m(pr, pc).get_mpz_t()) < 0) {
            pr = r;
            pc = c;
          }
        }
      }
      if (pr == rows) break;
      m.swap_rows(t, pr);
      m.swap_cols(t, pc);
      const mpz_class pivot = m(t, t);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (sgn(m(r, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), m(r, t).get_mpz_t(), pivot.get_mpz_t());
        for (std::size_t c = t; c < cols; ++c) m(r, c) -= q * m(t, c);
        if (sgn(m(r, t)) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (sgn(m(t, c)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), m(t, c).get_mpz_t(), pivot.get_mpz_t());
        for (std::size_t r = t; r < rows; ++r) m(r, c) -= q * m(r, t);
        if (sgn(m(t, c)) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and go again.
      bool divisible = true;
      for (std::size_t r = t + 1; r < rows && divisible; ++r) {
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (!mpz_divisible_p(m(r, c).get_mpz_t(), pivot.get_mpz_t())) {
            for (std::size_t k = t; k < cols; ++k) m(t, k) += m(r, k);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (sgn(m(t, t)) == 0) break;
    form.factors.push_back(abs(m(t, t)));
  }
  form.free_rank = cols - form.factors.size();
  return form;
}

IntegerMatrix relation_matrix(const Presentation& p) {
  const std::size_t n = p.generator_count();
  IntegerMatrix m(p.relators().size(), n);
  for (std::size_t r = 0; r < p.relators().size(); ++r) {
    const auto sums = exponent_sums(p.relators()[r], n);
    for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<long>(sums[c]);
  }
  return m;
}

SmithForm abelianization(const Presentation& p) { return smith_normal_form(relation_matrix(p)); }

bool is_perfect(const Presentation& p) {
  const SmithForm form = abelianization(p);
  if (form.free_rank != 0) return false;
  for (const auto& d : form.factors) {
    if (d != 1) return false;
  }
  return true;
}

std::string describe_abelian(const SmithForm& form) {
  std::string out;
  for (const auto& d : form.factors) {
    if (d == 1) continue;
    if (!out.empty()) out += " x ";
    out += "Z/" + d.get_str();
  }
  if (form.free_rank > 0) {
    if (!out.empty()) out += " x ";
    out += "Z^" + std::to_string(form.free_rank);
  }
  return out.empty() ? "trivial" : out;
}

}  // namespace weakcomm
