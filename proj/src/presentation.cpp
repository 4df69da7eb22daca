#include "weakcomm/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_map>

namespace weakcomm {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

bool is_identifier(std::string_view name) {
  if (name.empty() || std::isalpha(static_cast<unsigned char>(name[0])) == 0) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; });
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Presentation presentation() {
    expect('<');
    std::vector<std::string> gens;
    skip_space();
    if (peek() != '|') {
      gens.push_back(identifier());
      while (accept(',')) gens.push_back(identifier());
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (lookup_.contains(gens[i])) fail("duplicate generator '" + gens[i] + "'");
      lookup_.emplace(gens[i], static_cast<std::uint32_t>(i));
    }
    expect('|');
    std::vector<Word> rels;
    skip_space();
    if (peek() != '>') {
      rels.push_back(expression());
      while (accept(',')) rels.push_back(expression());
    }
    expect('>');
    skip_space();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return Presentation(std::move(gens), std::move(rels));
  }

  Word word_with(const std::vector<std::string>& gens) {
    for (std::size_t i = 0; i < gens.size(); ++i) lookup_.emplace(gens[i], static_cast<std::uint32_t>(i));
    Word w = expression();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return w;
  }

 private:
  Word expression() {
    Word w = term();
    while (accept('*')) w *= term();
    return w;
  }

  Word term() {
    Word base = atom();
    if (!accept('^')) return base;
    return base.pow(exponent());
  }

  std::int64_t exponent() {
    const bool paren = accept('(');
    skip_space();
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      advance();
    } else if (peek() == '+') {
      advance();
    }
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) advance();
    if (start == pos_) fail("expected integer exponent");
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) fail("exponent out of range");
    if (paren) expect(')');
    return negative ? -value : value;
  }

  Word atom() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      advance();
      Word w = expression();
      expect(')');
      return w;
    }
    if (c == '[') {
      advance();
      Word w = expression();
      expect(',');
      w = commutator(w, expression());
      // left-normed: [x,y,z] = [[x,y],z]
      while (accept(',')) w = commutator(w, expression());
      expect(']');
      return w;
    }
    const std::size_t line = line_;
    const std::size_t col = column_;
    const std::string name = identifier();
    const auto it = lookup_.find(name);
    if (it == lookup_.end()) throw ParseError("undeclared generator '" + name + "'", line, col);
    return Word::generator(it->second);
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || std::isalpha(static_cast<unsigned char>(text_[pos_])) == 0) fail("expected identifier");
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
      advance();
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
      } else {
        break;
      }
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "' but found '" + peek() + "'");
    }
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  std::unordered_map<std::string, std::uint32_t> lookup_;
};

std::string format_syllables(const Presentation& p, std::span<const Letter> letters) {
  std::string out;
  std::size_t i = 0;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    if (!out.empty()) out += '*';
    out += p.generators()[letters[i].gen];
    const std::size_t run = j - i;
    if (letters[i].inverse) {
      out += "^-" + std::to_string(run);
    } else if (run > 1) {
      out += "^" + std::to_string(run);
    }
    i = j;
  }
  return out;
}

}  // namespace

Presentation::Presentation(std::vector<std::string> generators, std::vector<Word> relators)
    : generators_(std::move(generators)) {
  std::set<std::string> seen_names;
  for (const auto& g : generators_) {
    if (!is_identifier(g)) throw std::invalid_argument("invalid generator name '" + g + "'");
    if (!seen_names.insert(g).second) throw std::invalid_argument("duplicate generator '" + g + "'");
  }
  std::set<Word> seen;
  for (auto& r : relators) {
    if (r.generator_bound() > generators_.size()) {
      throw std::invalid_argument("relator uses an undeclared generator index");
    }
    if (r.empty() || !seen.insert(r).second) continue;
    relators_.push_back(std::move(r));
  }
}

std::optional<std::uint32_t> Presentation::find_generator(std::string_view name) const {
  const auto it = std::find(generators_.begin(), generators_.end(), name);
  if (it == generators_.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - generators_.begin());
}

std::string Presentation::format_word(const Word& w) const {
  if (w.empty()) return "1";
  const auto letters = w.letters();
  const std::size_t n = letters.size();
  // Print proper powers u^k as (u)^k; w is reduced, so u is cyclically reduced.
  for (std::size_t period = 1; period * 2 <= n; ++period) {
    if (n % period != 0) continue;
    bool periodic = true;
    for (std::size_t i = period; i < n && periodic; ++i) periodic = letters[i] == letters[i - period];
    if (!periodic) continue;
    const auto root = letters.subspan(0, period);
    const bool single_letter = std::all_of(root.begin(), root.end(), [&](Letter l) { return l == root[0]; });
    if (single_letter) break;
    return "(" + format_syllables(*this, root) + ")^" + std::to_string(n / period);
  }
  return format_syllables(*this, letters);
}

std::string Presentation::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    out += (i == 0 ? " " : ", ");
    out += generators_[i];
  }
  out += " |";
  for (std::size_t i = 0; i < relators_.size(); ++i) {
    out += (i == 0 ? " " : ", ");
    out += format_word(relators_[i]);
  }
  out += " >";
  return out;
}

Word Presentation::parse_word(std::string_view text) const {
  // "1" denotes the identity in printed output.
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())) != 0) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())) != 0) trimmed.remove_suffix(1);
  if (trimmed == "1") return Word{};
  return Parser(text).word_with(generators_);
}

Presentation parse_presentation(std::string_view text) { return Parser(text).presentation(); }

GeneratorMap::GeneratorMap(Presentation source, Presentation target, std::vector<Word> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.generator_count()) {
    throw std::invalid_argument("generator map: image count does not match source generator count");
  }
  for (const auto& img : images_) {
    if (img.generator_bound() > target_.generator_count()) {
      throw std::invalid_argument("generator map: image uses a generator outside the target");
    }
  }
}

Word GeneratorMap::apply(const Word& w) const {
  std::vector<Letter> out;
  for (const Letter l : w.letters()) {
    if (l.gen >= images_.size()) throw std::out_of_range("generator map: word outside the source");
    const Word& img = images_[l.gen];
    if (l.inverse) {
      const auto letters = img.letters();
      for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.push_back(it->flipped());
    } else {
      out.insert(out.end(), img.letters().begin(), img.letters().end());
    }
  }
  return Word(std::move(out));
}

bool GeneratorMap::respects_relators(const std::function<bool(const Word&)>& target_is_identity) const {
  return std::all_of(source_.relators().begin(), source_.relators().end(),
                     [&](const Word& r) { return target_is_identity(apply(r)); });
}

GeneratorMap GeneratorMap::after(const GeneratorMap& first) const {
  if (!(first.target() == source_)) throw std::invalid_argument("generator map composition: mismatched presentations");
  std::vector<Word> images;
  images.reserve(first.images().size());
  for (const auto& w : first.images()) images.push_back(apply(w));
  return GeneratorMap(first.source(), target_, std::move(images));
}

Presentation free_product(const Presentation& p, const Presentation& q) {
  std::vector<std::string> gens = p.generators();
  std::set<std::string> taken(gens.begin(), gens.end());
  for (std::string name : q.generators()) {
    while (taken.contains(name)) name += "_2";
    taken.insert(name);
    gens.push_back(name);
  }
  const auto shift = static_cast<std::uint32_t>(p.generator_count());
  std::vector<Word> rels = p.relators();
  for (const auto& r : q.relators()) {
    std::vector<Letter> letters(r.letters().begin(), r.letters().end());
    for (auto& l : letters) l.gen += shift;
    rels.emplace_back(std::move(letters));
  }
  return Presentation(std::move(gens), std::move(rels));
}

Presentation direct_power(const Presentation& p, std::size_t k) {
  const std::size_t n = p.generator_count();
  std::vector<std::string> gens;
  std::vector<Word> rels;
  for (std::size_t copy = 0; copy < k; ++copy) {
    for (const auto& g : p.generators()) gens.push_back(g + "_" + std::to_string(copy + 1));
    for (const auto& r : p.relators()) {
      std::vector<Letter> letters(r.letters().begin(), r.letters().end());
      for (auto& l : letters) l.gen = power_generator(n, copy, l.gen);
      rels.emplace_back(std::move(letters));
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (std::uint32_t g = 0; g < n; ++g) {
        for (std::uint32_t h = 0; h < n; ++h) {
          rels.push_back(commutator(Word::generator(power_generator(n, i, g)), Word::generator(power_generator(n, j, h))));
        }
      }
    }
  }
  return Presentation(std::move(gens), std::move(rels));
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace weakcomm
