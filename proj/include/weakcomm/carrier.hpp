#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "weakcomm/finite_group.hpp"
#include "weakcomm/word.hpp"

namespace weakcomm {

/// Canonical form of an element of a computable group. The encoding is owned by the
/// carrier; ordering is shortlex on the key, which gives index order for finite groups,
/// lexicographic order on Z^n and shortlex on reduced words in F_k.
struct GroupElement {
  std::vector<std::int64_t> key;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
    if (auto c = a.key.size() <=> b.key.size(); c != 0) return c;
    return a.key <=> b.key;
  }
};

/// Requested a capability the carrier does not provide (e.g. conjugacy in BS(1,n)).
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A group with solvable word problem, used as the coefficient-support carrier of group rings.
class ComputableGroup {
 public:
  virtual ~ComputableGroup() = default;

  virtual std::string name() const = 0;
  virtual std::vector<std::string> generator_names() const = 0;
  virtual GroupElement identity() const = 0;
  virtual GroupElement multiply(const GroupElement& x, const GroupElement& y) const = 0;
  virtual GroupElement inverse(const GroupElement& x) const = 0;
  /// Some word over generator_names() representing x.
  virtual Word to_word(const GroupElement& x) const = 0;

  virtual bool has_conjugacy() const { return false; }
  /// Canonical representative of the conjugacy class of x.
  virtual GroupElement conjugacy_representative(const GroupElement& x) const;

  std::size_t generator_count() const { return generator_names().size(); }
  GroupElement generator(std::uint32_t g) const;
  /// Evaluates a word over generator_names().
  GroupElement from_word(const Word& w) const;
  bool is_identity(const GroupElement& x) const { return x == identity(); }
  /// to_word rendered with generator names, `e` for the identity.
  std::string format(const GroupElement& x) const;
  GroupElement power(const GroupElement& x, std::int64_t n) const;
  GroupElement commutator(const GroupElement& x, const GroupElement& y) const;

  /// Element given by a uniformly random word of length at most max_length.
  GroupElement random_element(std::mt19937_64& rng, std::size_t max_length) const;

 protected:
  virtual GroupElement generator_element(std::uint32_t g) const = 0;
};

using CarrierPtr = std::shared_ptr<const ComputableGroup>;

/// Finite group via its regular representation; conjugacy representative = least index.
class FiniteCarrier final : public ComputableGroup {
 public:
  explicit FiniteCarrier(FiniteGroup group, std::string name = "finite");

  const FiniteGroup& group() const { return group_; }
  GroupElement element(Element x) const { return {{static_cast<std::int64_t>(x)}}; }
  Element index(const GroupElement& x) const;

  std::string name() const override { return name_; }
  std::vector<std::string> generator_names() const override { return group_.presentation().generators(); }
  GroupElement identity() const override { return element(0); }
  GroupElement multiply(const GroupElement& x, const GroupElement& y) const override;
  GroupElement inverse(const GroupElement& x) const override;
  Word to_word(const GroupElement& x) const override;
  bool has_conjugacy() const override { return true; }
  GroupElement conjugacy_representative(const GroupElement& x) const override;

 protected:
  GroupElement generator_element(std::uint32_t g) const override { return element(group_.generator(g)); }

 private:
  FiniteGroup group_;
  std::string name_;
  ConjugacyClasses classes_;
};

/// Z^n; elements are integer vectors, conjugacy is trivial.
class FreeAbelianCarrier final : public ComputableGroup {
 public:
  explicit FreeAbelianCarrier(std::size_t rank);

  std::string name() const override { return "Z^" + std::to_string(rank_); }
  std::vector<std::string> generator_names() const override;
  GroupElement identity() const override { return {std::vector<std::int64_t>(rank_, 0)}; }
  GroupElement multiply(const GroupElement& x, const GroupElement& y) const override;
  GroupElement inverse(const GroupElement& x) const override;
  Word to_word(const GroupElement& x) const override;
  bool has_conjugacy() const override { return true; }
  GroupElement conjugacy_representative(const GroupElement& x) const override { return x; }

 protected:
  GroupElement generator_element(std::uint32_t g) const override;

 private:
  std::size_t rank_;
};

/// Free group F_k; elements are reduced words, keys are Letter::column() sequences.
/// Conjugacy representative: least rotation of the cyclically reduced core.
class FreeCarrier final : public ComputableGroup {
 public:
  explicit FreeCarrier(std::size_t rank);

  static GroupElement encode(const Word& w);
  static Word decode(const GroupElement& x);

  std::string name() const override { return "F_" + std::to_string(rank_); }
  std::vector<std::string> generator_names() const override;
  GroupElement identity() const override { return {}; }
  GroupElement multiply(const GroupElement& x, const GroupElement& y) const override;
  GroupElement inverse(const GroupElement& x) const override;
  Word to_word(const GroupElement& x) const override;
  bool has_conjugacy() const override { return true; }
  GroupElement conjugacy_representative(const GroupElement& x) const override;

 protected:
  GroupElement generator_element(std::uint32_t g) const override { return encode(Word::generator(g)); }

 private:
  std::size_t rank_;
};

/// BS(1,n) = < a, t | t a t^-1 = a^n >. Elements t^-p a^q t^r with p, r >= 0 and n not dividing q
/// whenever p > 0 and r > 0; key {p, q, r}. Conjugacy is not provided.
class BaumslagSolitarCarrier final : public ComputableGroup {
 public:
  explicit BaumslagSolitarCarrier(std::int64_t n);

  static GroupElement normal_form(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t n);
  std::int64_t n() const { return n_; }

  std::string name() const override { return "BS(1," + std::to_string(n_) + ")"; }
  std::vector<std::string> generator_names() const override { return {"a", "t"}; }
  GroupElement identity() const override { return {{0, 0, 0}}; }
  GroupElement multiply(const GroupElement& x, const GroupElement& y) const override;
  GroupElement inverse(const GroupElement& x) const override;
  Word to_word(const GroupElement& x) const override;

 protected:
  GroupElement generator_element(std::uint32_t g) const override;

 private:
  std::int64_t n_;
};

CarrierPtr make_finite_carrier(const FiniteGroup& g, std::string name = "finite");
CarrierPtr make_free_abelian(std::size_t rank);
CarrierPtr make_free_group(std::size_t rank);
CarrierPtr make_baumslag_solitar(std::int64_t n);
/// Cyclic group C_n realized from < a | a^n >.
CarrierPtr make_cyclic(std::size_t n);

/// Homomorphism between carriers as a function on canonical forms.
struct CarrierHom {
  CarrierPtr source;
  CarrierPtr target;
  std::function<GroupElement(const GroupElement&)> map;

  GroupElement operator()(const GroupElement& x) const { return map(x); }

  static CarrierHom identity(const CarrierPtr& group);
  /// Extends generator images homomorphically (images must respect the source relations).
  static CarrierHom from_generator_images(const CarrierPtr& source, const CarrierPtr& target,
                                          std::vector<GroupElement> images);
  /// Wraps a FiniteHom between finite carriers built over its source and target.
  static CarrierHom from_finite(const FiniteHom& h, const CarrierPtr& source, const CarrierPtr& target);
};

}  // namespace weakcomm
