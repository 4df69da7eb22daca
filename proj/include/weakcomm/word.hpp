#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace weakcomm {

/// A signed generator symbol: generator index plus exponent sign.
struct Letter {
  std::uint32_t gen = 0;
  bool inverse = false;

  constexpr Letter flipped() const { return {gen, !inverse}; }

  // Column index in a coset table: 2*gen for g, 2*gen+1 for g^-1.
  constexpr std::uint32_t column() const { return 2 * gen + (inverse ? 1 : 0); }
  static constexpr Letter from_column(std::uint32_t col) { return {col / 2, (col & 1U) != 0}; }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter a, Letter b) { return a.column() <=> b.column(); }
};

/// Freely reduces an arbitrary letter sequence.
std::vector<Letter> free_reduce(std::span<const Letter> letters);

/// Element of a free group, always stored freely reduced. The empty word is e.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Letter> letters);

  static Word generator(std::uint32_t gen, bool inverse = false);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word pow(std::int64_t exponent) const;

  /// Largest generator index used plus one (0 for e).
  std::uint32_t generator_bound() const;

  friend Word operator*(const Word& lhs, const Word& rhs);
  Word& operator*=(const Word& rhs);

  friend bool operator==(const Word&, const Word&) = default;
  /// Shortlex order with letters ordered a < a^-1 < b < b^-1 < ...
  friend std::strong_ordering operator<=>(const Word& lhs, const Word& rhs);

 private:
  std::vector<Letter> letters_;
};

/// [x,y] = x^-1 y^-1 x y.
Word commutator(const Word& x, const Word& y);

/// x^y = y^-1 x y.
Word conjugate(const Word& x, const Word& by);

struct CyclicReduction {
  Word core;
  Word conjugator;  // w = conjugator * core * conjugator^-1
};

CyclicReduction cyclically_reduce(const Word& w);

/// Exponent sum of each generator, sized to `generators`.
std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t generators);

}  // namespace weakcomm
