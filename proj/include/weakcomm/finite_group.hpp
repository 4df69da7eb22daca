#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "weakcomm/coset_table.hpp"
#include "weakcomm/presentation.hpp"

namespace weakcomm {

/// Element index inside a FiniteGroup; 0 is the identity.
using Element = std::uint32_t;

/// A finite group in its regular representation, realized from a closed coset table over
/// the trivial subgroup. Elements are numbered in shortlex order of their normal words.
/// Copies share the underlying data.
class FiniteGroup {
 public:
  static FiniteGroup realize(const CosetTable& table);

  const Presentation& presentation() const { return data_->presentation; }
  std::size_t order() const { return data_->words.size(); }
  std::size_t generator_count() const { return presentation().generator_count(); }

  static constexpr Element identity() { return 0; }
  Element generator(std::uint32_t g) const { return act(identity(), Letter{g, false}); }

  /// x * letter, the right regular action.
  Element act(Element x, Letter l) const { return data_->right[l.column()][x]; }

  Element multiply(Element x, Element y) const;
  Element inverse(Element x) const { return data_->inverse[x]; }
  Element power(Element x, std::int64_t n) const;
  Element commutator(Element x, Element y) const;
  /// y^-1 x y
  Element conjugate(Element x, Element by) const;

  Element element_of(const Word& w) const;
  const Word& word(Element x) const { return data_->words[x]; }
  const std::vector<Word>& words() const { return data_->words; }

  std::uint64_t element_order(Element x) const;

  /// Whether the two handles refer to the same realized group.
  bool same_as(const FiniteGroup& other) const { return data_ == other.data_; }

 private:
  struct Data {
    Presentation presentation;
    std::vector<std::vector<Element>> right;  // per column
    std::vector<Word> words;
    std::vector<Element> inverse;
    std::vector<Element> table;  // full Cayley table when small, else empty
  };

  explicit FiniteGroup(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// Enumerates p over the trivial subgroup and realizes the result.
FiniteGroup realize_presentation(const Presentation& p, const EnumerationLimits& limits = {});

class Subgroup {
 public:
  Subgroup(FiniteGroup parent, std::vector<Element> elements, std::vector<Element> generators);

  const FiniteGroup& parent() const { return parent_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<Element>& generators() const { return generators_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(Element x) const;
  bool is_trivial() const { return elements_.size() == 1; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }

 private:
  FiniteGroup parent_;
  std::vector<Element> elements_;  // sorted
  std::vector<Element> generators_;
};

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Element> generators);
Subgroup normal_closure(const FiniteGroup& g, std::span<const Element> generators);
Subgroup whole_group(const FiniteGroup& g);
Subgroup intersection(const Subgroup& a, const Subgroup& b);

/// Homomorphism given by images of the source generators.
class FiniteHom {
 public:
  /// Throws std::invalid_argument if a source relator does not map to the identity.
  FiniteHom(FiniteGroup source, FiniteGroup target, std::vector<Element> images);

  const FiniteGroup& source() const { return source_; }
  const FiniteGroup& target() const { return target_; }
  const std::vector<Element>& images() const { return images_; }

  Element operator()(Element x) const { return table_[x]; }

 private:
  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<Element> images_;
  std::vector<Element> table_;
};

struct KernelImage {
  Subgroup kernel;
  Subgroup image;
};

KernelImage kernel_and_image(const FiniteHom& h);

Subgroup center(const FiniteGroup& g);
Subgroup derived_subgroup(const FiniteGroup& g);
bool is_central(const Subgroup& s);
bool is_normal(const Subgroup& s);

struct ConjugacyClasses {
  std::vector<std::vector<Element>> classes;  // ordered by representative; each sorted
  std::vector<std::uint32_t> class_of;        // element -> class position

  Element representative(Element x) const { return classes[class_of[x]].front(); }
};

ConjugacyClasses conjugacy_classes(const FiniteGroup& g);

}  // namespace weakcomm
