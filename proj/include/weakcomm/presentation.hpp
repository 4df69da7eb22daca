#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "weakcomm/word.hpp"

namespace weakcomm {

/// Raised by the presentation parser; carries the 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Generators plus relators. Relators are freely reduced, nonempty, and unique;
/// duplicates collapse onto the first occurrence.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  std::size_t generator_count() const { return generators_.size(); }

  std::optional<std::uint32_t> find_generator(std::string_view name) const;

  /// Canonical text form `< a, b | a^2, (a*b)^5 >`.
  std::string to_string() const;
  std::string format_word(const Word& w) const;

  /// Parses a word (relator syntax) against this presentation's generators.
  Word parse_word(std::string_view text) const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

Presentation parse_presentation(std::string_view text);

bool is_identifier(std::string_view name);

/// A homomorphism between presented groups, given by generator images.
class GeneratorMap {
 public:
  GeneratorMap(Presentation source, Presentation target, std::vector<Word> images);

  const Presentation& source() const { return source_; }
  const Presentation& target() const { return target_; }
  const std::vector<Word>& images() const { return images_; }

  Word apply(const Word& w) const;
  Word operator()(const Word& w) const { return apply(w); }

  /// Checks that every source relator maps to e, given a word-problem oracle for the target.
  bool respects_relators(const std::function<bool(const Word&)>& target_is_identity) const;

  /// this after `first`: x -> this(first(x)).
  GeneratorMap after(const GeneratorMap& first) const;

 private:
  Presentation source_;
  Presentation target_;
  std::vector<Word> images_;
};

/// Disjoint generators and union of relators. Colliding names in `q` get a `_2` suffix.
Presentation free_product(const Presentation& p, const Presentation& q);

/// k disjoint copies (generator `x` becomes `x_i`, i = 1..k) plus [g_i, h_j] for all i < j.
Presentation direct_power(const Presentation& p, std::size_t k);

/// Generator index of copy `copy` (0-based) of base generator `gen` inside direct_power(p, k).
inline std::uint32_t power_generator(std::size_t base_generators, std::size_t copy, std::uint32_t gen) {
  return static_cast<std::uint32_t>(copy * base_generators + gen);
}

/// Stable 64-bit FNV-1a digest, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace weakcomm
