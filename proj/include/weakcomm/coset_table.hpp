#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "weakcomm/presentation.hpp"

namespace weakcomm {

/// Guards for the coset enumeration semidecision procedure.
struct EnumerationLimits {
  std::size_t max_cosets = 2'000'000;
  std::size_t max_definitions = 10'000'000;
};

/// The enumeration gave up. This says nothing about whether the index is finite.
class LimitExceeded : public std::runtime_error {
 public:
  enum class Kind { cosets, definitions };

  LimitExceeded(Kind kind, std::size_t limit);

  Kind kind() const { return kind_; }
  std::size_t limit() const { return limit_; }

 private:
  Kind kind_;
  std::size_t limit_;
};

/// Permutation of {0..n-1} acting on the right: (p * q)(x) = q(p(x)).
struct Permutation {
  std::vector<std::uint32_t> images;

  static Permutation identity(std::size_t n);

  std::size_t degree() const { return images.size(); }
  std::uint32_t operator()(std::uint32_t x) const { return images[x]; }
  bool is_identity() const;
  Permutation inverse() const;
  /// Least n > 0 with p^n = 1.
  std::uint64_t order() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

/// Coset table over a presentation relative to a subgroup. Coset 0 is the subgroup coset.
/// Columns are Letter::column(): 2g for g, 2g+1 for g^-1. Entries are -1 when undefined.
class CosetTable {
 public:
  static constexpr std::int32_t undefined = -1;

  CosetTable(Presentation presentation, std::vector<Word> subgroup, std::size_t cosets,
             std::vector<std::int32_t> entries);

  const Presentation& presentation() const { return presentation_; }
  const std::vector<Word>& subgroup() const { return subgroup_; }
  std::size_t cosets() const { return cosets_; }
  std::size_t columns() const { return columns_; }

  std::int32_t entry(std::size_t coset, std::size_t column) const { return entries_[coset * columns_ + column]; }
  std::span<const std::int32_t> row(std::size_t coset) const {
    return std::span<const std::int32_t>(entries_).subspan(coset * columns_, columns_);
  }
  std::span<const std::int32_t> entries() const { return entries_; }

  bool closed() const;
  /// Coset reached from `coset` by reading `w`; requires a closed table.
  std::uint32_t trace(std::uint32_t coset, const Word& w) const;

  /// Renumbers cosets: old coset c becomes mapping[c]. mapping[0] must be 0.
  CosetTable relabel(std::span<const std::uint32_t> mapping) const;

  /// Text dump: header lines followed by one row per coset (1-based entries, `-` for undefined).
  std::string dump() const;

  friend bool operator==(const CosetTable&, const CosetTable&) = default;

 private:
  Presentation presentation_;
  std::vector<Word> subgroup_;
  std::size_t cosets_;
  std::size_t columns_;
  std::vector<std::int32_t> entries_;
};

struct EnumerationStats {
  std::size_t definitions = 0;
  std::size_t max_live = 0;
  std::size_t lookaheads = 0;
};

/// HLT coset enumeration with lookahead. The returned table is closed, standardized and audited.
CosetTable enumerate(const Presentation& p, const std::vector<Word>& subgroup, const EnumerationLimits& limits = {},
                     EnumerationStats* stats = nullptr);

/// Breadth-first renumbering from coset 0, scanning columns in order.
CosetTable standardize(const CosetTable& t);

/// Exhaustive closure audit: consistency, relator cycles, subgroup stabilizes coset 0, transitivity.
/// Returns an empty string on success and a description of the first violation otherwise.
std::string audit(const CosetTable& t);

/// One permutation of the cosets per generator.
std::vector<Permutation> permutation_rep(const CosetTable& t);

/// Image of w under the permutation representation.
Permutation word_image(const CosetTable& t, const Word& w);

}  // namespace weakcomm
