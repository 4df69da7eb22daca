#include "weakcomm/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace weakcomm {

std::vector<Letter> free_reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (const Letter l : letters) {
    if (!out.empty() && out.back() == l.flipped()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word::Word(std::vector<Letter> letters) : letters_(free_reduce(letters)) {}

Word::Word(std::initializer_list<Letter> letters)
    : letters_(free_reduce(std::span<const Letter>(letters.begin(), letters.size()))) {}

Word Word::generator(std::uint32_t gen, bool inverse) { return Word{Letter{gen, inverse}}; }

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back(it->flipped());
  }
  return out;
}

Word Word::pow(std::int64_t exponent) const {
  const Word base = exponent < 0 ? inverse() : *this;
  const std::uint64_t n = exponent < 0 ? -static_cast<std::uint64_t>(exponent) : exponent;
  // Conjugate-core trick keeps this linear: w = c * core * c^-1, so w^n = c * core^n * c^-1.
  const auto [core, conj] = cyclically_reduce(base);
  std::vector<Letter> letters(conj.letters_);
  letters.reserve(conj.length() * 2 + core.length() * n);
  for (std::uint64_t i = 0; i < n; ++i) {
    letters.insert(letters.end(), core.letters_.begin(), core.letters_.end());
  }
  const Word conj_inv = conj.inverse();
  letters.insert(letters.end(), conj_inv.letters_.begin(), conj_inv.letters_.end());
  return Word(std::move(letters));
}

std::uint32_t Word::generator_bound() const {
  std::uint32_t bound = 0;
  for (const Letter l : letters_) bound = std::max(bound, l.gen + 1);
  return bound;
}

Word operator*(const Word& lhs, const Word& rhs) {
  Word out = lhs;
  out *= rhs;
  return out;
}

Word& Word::operator*=(const Word& rhs) {
  std::size_t i = 0;
  while (i < rhs.letters_.size() && !letters_.empty() && letters_.back() == rhs.letters_[i].flipped()) {
    letters_.pop_back();
    ++i;
  }
  letters_.insert(letters_.end(), rhs.letters_.begin() + static_cast<std::ptrdiff_t>(i), rhs.letters_.end());
  return *this;
}

std::strong_ordering operator<=>(const Word& lhs, const Word& rhs) {
  if (auto c = lhs.length() <=> rhs.length(); c != 0) return c;
  return std::lexicographical_compare_three_way(lhs.letters_.begin(), lhs.letters_.end(), rhs.letters_.begin(),
                                                rhs.letters_.end());
}

Word commutator(const Word& x, const Word& y) { return x.inverse() * y.inverse() * x * y; }

Word conjugate(const Word& x, const Word& by) { return by.inverse() * x * by; }

CyclicReduction cyclically_reduce(const Word& w) {
  const auto letters = w.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == letters[hi - 1].flipped()) {
    ++lo;
    --hi;
  }
  return {Word(std::vector<Letter>(letters.begin() + static_cast<std::ptrdiff_t>(lo),
                                   letters.begin() + static_cast<std::ptrdiff_t>(hi))),
          Word(std::vector<Letter>(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(lo)))};
}

std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t generators) {
  std::vector<std::int64_t> sums(generators, 0);
  for (const Letter l : w.letters()) {
    if (l.gen >= generators) throw std::out_of_range("exponent_sums: generator index out of range");
    sums[l.gen] += l.inverse ? -1 : 1;
  }
  return sums;
}

}  // namespace weakcomm
