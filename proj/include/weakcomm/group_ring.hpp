#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "weakcomm/carrier.hpp"

namespace weakcomm {

using Rational = mpq_class;

/// Thrown when combining ring elements or matrices over different groups.
class GroupMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite-support rational combination of group elements. Zero coefficients are never stored.
class RingElement {
 public:
  explicit RingElement(CarrierPtr group);
  RingElement(CarrierPtr group, const Rational& scalar);
  RingElement(CarrierPtr group, const GroupElement& g, const Rational& coefficient = 1);

  static RingElement zero(CarrierPtr group) { return RingElement(std::move(group)); }
  static RingElement one(CarrierPtr group);

  const CarrierPtr& group() const { return group_; }
  const std::map<GroupElement, Rational>& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  std::vector<GroupElement> support() const;
  Rational coefficient(const GroupElement& g) const;
  bool is_zero() const { return terms_.empty(); }

  void add_term(const GroupElement& g, const Rational& c);

  RingElement operator-() const;
  RingElement& operator+=(const RingElement& rhs);
  RingElement& operator-=(const RingElement& rhs);
  friend RingElement operator+(RingElement lhs, const RingElement& rhs) { return lhs += rhs; }
  friend RingElement operator-(RingElement lhs, const RingElement& rhs) { return lhs -= rhs; }
  /// Convolution: sum x(g) y(h) gh.
  friend RingElement operator*(const RingElement& lhs, const RingElement& rhs);
  RingElement scaled(const Rational& c) const;

  friend bool operator==(const RingElement& a, const RingElement& b);

  /// `1/2*e + 1/2*a`; terms in canonical element order.
  std::string to_string() const;

 private:
  void check_same(const RingElement& other) const;

  CarrierPtr group_;
  std::map<GroupElement, Rational> terms_;
};

/// Parses `coeff * word` terms joined by `+`/`-` (e.g. `1/2*e - 3*a*b^-1`, `a`).
RingElement parse_ring_element(const CarrierPtr& group, std::string_view text);

/// Square matrix over a group ring, row-major.
class RingMatrix {
 public:
  RingMatrix(CarrierPtr group, std::size_t n);
  RingMatrix(std::size_t n, std::vector<RingElement> entries);

  static RingMatrix identity(const CarrierPtr& group, std::size_t n);
  static RingMatrix diagonal(std::vector<RingElement> diag);

  const CarrierPtr& group() const { return group_; }
  std::size_t size() const { return n_; }
  RingElement& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const RingElement& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  RingMatrix& operator+=(const RingMatrix& rhs);
  friend RingMatrix operator+(RingMatrix lhs, const RingMatrix& rhs) { return lhs += rhs; }
  friend RingMatrix operator-(const RingMatrix& lhs, const RingMatrix& rhs);
  friend RingMatrix operator*(const RingMatrix& lhs, const RingMatrix& rhs);
  friend bool operator==(const RingMatrix& a, const RingMatrix& b);

  std::string to_string() const;

 private:
  CarrierPtr group_;
  std::size_t n_;
  std::vector<RingElement> entries_;
};

Rational kappa(const RingElement& x);
Rational kappa(const RingMatrix& a);
Rational epsilon(const RingElement& x);
Rational epsilon(const RingMatrix& a);

bool is_idempotent(const RingMatrix& a);
bool is_idempotent(const RingElement& x);

/// (1/n)(1 + g + ... + g^(n-1)); throws if n is not the order of g.
RingElement torsion_idempotent(const CarrierPtr& group, const GroupElement& g, std::size_t n);

/// Class function keyed by canonical conjugacy representatives; only nonzero values stored.
struct ClassFunction {
  CarrierPtr group;
  std::map<GroupElement, Rational> values;

  Rational at(const GroupElement& x) const;
  Rational total() const;
};

/// r_A(x) = sum over y in [x] and i of a_ii(y). Throws CapabilityError without conjugacy.
ClassFunction hattori_stallings(const RingMatrix& a);

/// Entrywise transport of coefficients along a group homomorphism.
RingMatrix pushforward(const RingMatrix& a, const CarrierHom& h);
RingElement pushforward(const RingElement& x, const CarrierHom& h);

struct TraceReport {
  Rational kappa;
  Rational epsilon;
  Rational delta;  // epsilon - kappa
  bool kappa_nonnegative = false;
  bool epsilon_integral_in_range = false;
  bool weak_bass = false;  // delta == 0
  std::optional<bool> kaplansky_dichotomy;  // 1x1 only
  std::optional<ClassFunction> hattori_stallings;
  std::optional<bool> hattori_stallings_consistent;

  /// Zaleskii verdicts (kappa >= 0, epsilon in {0..n}) and, when applicable, the dichotomy and HS checks.
  bool constraints_hold() const;
};

/// Audits an idempotent matrix; throws std::invalid_argument for non-idempotents.
TraceReport trace_audit(const RingMatrix& a);

/// Invertible matrices with known inverse, used to conjugate trivial idempotents.
struct InvertiblePair {
  RingMatrix u;
  RingMatrix u_inverse;
};

/// diag(lambda_i g_i) for nonzero rational lambda_i.
InvertiblePair unit_matrix(std::vector<RingElement> diagonal_units);
/// I + r E_ij (i != j).
InvertiblePair transvection(const CarrierPtr& group, std::size_t n, std::size_t i, std::size_t j, const RingElement& r);
InvertiblePair compose(const InvertiblePair& first, const InvertiblePair& second);

/// Random ring element with support at most max_support, words of length at most max_length,
/// coefficients p/q with |p| <= 3 and 1 <= q <= 3.
RingElement random_ring_element(const CarrierPtr& group, std::mt19937_64& rng, std::size_t max_support,
                                std::size_t max_length);

/// Random product of `factors` units and transvections.
InvertiblePair random_invertible(const CarrierPtr& group, std::size_t n, std::mt19937_64& rng, std::size_t factors);

struct CorpusEntry {
  std::string label;
  RingMatrix matrix;
  /// Expected epsilon - kappa when known independently.
  std::optional<Rational> expected_delta;
  /// Matrix this one is similar to, when built as U B U^-1.
  std::optional<RingMatrix> conjugated_from;
};

struct TracePropertyResult {
  std::size_t pairs = 0;
  std::size_t kappa_failures = 0;    // kappa(xy) != kappa(yx)
  std::size_t epsilon_failures = 0;  // epsilon(xy) != epsilon(x) epsilon(y) or epsilon(x+y) != epsilon(x) + epsilon(y)

  bool passed() const { return kappa_failures == 0 && epsilon_failures == 0; }
};

/// Random pairs with support at most 4 and words of length at most 4.
TracePropertyResult trace_property_suite(const CarrierPtr& group, std::size_t pairs, std::uint64_t seed);

/// U diag(d) U^-1 for random invertible U and a 0/1 diagonal d with at least one 1 and one 0.
RingMatrix conjugated_diagonal_idempotent(const CarrierPtr& group, std::size_t n, std::mt19937_64& rng,
                                          std::size_t factors, std::vector<bool>* diagonal = nullptr);

}  // namespace weakcomm
