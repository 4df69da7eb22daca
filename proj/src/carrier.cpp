#include "weakcomm/carrier.hpp"

#include <algorithm>

namespace weakcomm {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("BS(1,n): exponent overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("BS(1,n): exponent overflow");
  return out;
}

std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
  std::int64_t out = 1;
  for (std::int64_t i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

std::vector<std::string> alphabet_names(std::size_t rank) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rank; ++i) {
    names.push_back(rank <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i + 1));
  }
  return names;
}

}  // namespace

// --- ComputableGroup --------------------------------------------------------

GroupElement ComputableGroup::conjugacy_representative(const GroupElement&) const {
  throw CapabilityError("conjugacy canonicalization is not available for " + name());
}

GroupElement ComputableGroup::generator(std::uint32_t g) const {
  if (g >= generator_count()) throw std::out_of_range("generator index out of range for " + name());
  return generator_element(g);
}

GroupElement ComputableGroup::from_word(const Word& w) const {
  GroupElement x = identity();
  for (const Letter l : w.letters()) {
    const GroupElement g = generator(l.gen);
    x = multiply(x, l.inverse ? inverse(g) : g);
  }
  return x;
}

std::string ComputableGroup::format(const GroupElement& x) const {
  const Word w = to_word(x);
  if (w.empty()) return "e";
  const auto names = generator_names();
  std::string out;
  const auto letters = w.letters();
  std::size_t i = 0;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    if (!out.empty()) out += '*';
    out += names[letters[i].gen];
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

GroupElement ComputableGroup::power(const GroupElement& x, std::int64_t n) const {
  GroupElement base = n < 0 ? inverse(x) : x;
  std::uint64_t e = n < 0 ? -static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
  GroupElement result = identity();
  while (e > 0) {
    if ((e & 1U) != 0) result = multiply(result, base);
    e >>= 1U;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

GroupElement ComputableGroup::commutator(const GroupElement& x, const GroupElement& y) const {
  return multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
}

GroupElement ComputableGroup::random_element(std::mt19937_64& rng, std::size_t max_length) const {
  const auto gens = static_cast<std::uint32_t>(generator_count());
  if (gens == 0) return identity();
  std::uniform_int_distribution<std::size_t> length(0, max_length);
  std::uniform_int_distribution<std::uint32_t> column(0, 2 * gens - 1);
  std::vector<Letter> letters(length(rng));
  for (auto& l : letters) l = Letter::from_column(column(rng));
  return from_word(Word(std::move(letters)));
}

// --- FiniteCarrier ----------------------------------------------------------

FiniteCarrier::FiniteCarrier(FiniteGroup group, std::string name)
    : group_(std::move(group)), name_(std::move(name)), classes_(conjugacy_classes(group_)) {}

Element FiniteCarrier::index(const GroupElement& x) const {
  if (x.key.size() != 1 || x.key[0] < 0 || static_cast<std::size_t>(x.key[0]) >= group_.order()) {
    throw std::invalid_argument("not an element of " + name_);
  }
  return static_cast<Element>(x.key[0]);
}

GroupElement FiniteCarrier::multiply(const GroupElement& x, const GroupElement& y) const {
  return element(group_.multiply(index(x), index(y)));
}

GroupElement FiniteCarrier::inverse(const GroupElement& x) const { return element(group_.inverse(index(x))); }

Word FiniteCarrier::to_word(const GroupElement& x) const { return group_.word(index(x)); }

GroupElement FiniteCarrier::conjugacy_representative(const GroupElement& x) const {
  return element(classes_.representative(index(x)));
}

// --- FreeAbelianCarrier -----------------------------------------------------

FreeAbelianCarrier::FreeAbelianCarrier(std::size_t rank) : rank_(rank) {}

std::vector<std::string> FreeAbelianCarrier::generator_names() const { return alphabet_names(rank_); }

GroupElement FreeAbelianCarrier::multiply(const GroupElement& x, const GroupElement& y) const {
  GroupElement out = x;
  for (std::size_t i = 0; i < rank_; ++i) out.key[i] = checked_add(out.key[i], y.key[i]);
  return out;
}

GroupElement FreeAbelianCarrier::inverse(const GroupElement& x) const {
  GroupElement out = x;
  for (auto& v : out.key) v = -v;
  return out;
}

Word FreeAbelianCarrier::to_word(const GroupElement& x) const {
  Word w;
  for (std::uint32_t i = 0; i < rank_; ++i) w *= Word::generator(i).pow(x.key[i]);
  return w;
}

GroupElement FreeAbelianCarrier::generator_element(std::uint32_t g) const {
  GroupElement out = identity();
  out.key[g] = 1;
  return out;
}

// --- FreeCarrier ------------------------------------------------------------

FreeCarrier::FreeCarrier(std::size_t rank) : rank_(rank) {}

std::vector<std::string> FreeCarrier::generator_names() const { return alphabet_names(rank_); }

GroupElement FreeCarrier::encode(const Word& w) {
  GroupElement out;
  out.key.reserve(w.length());
  for (const Letter l : w.letters()) out.key.push_back(l.column());
  return out;
}

Word FreeCarrier::decode(const GroupElement& x) {
  std::vector<Letter> letters;
  letters.reserve(x.key.size());
  for (const auto c : x.key) letters.push_back(Letter::from_column(static_cast<std::uint32_t>(c)));
  return Word(std::move(letters));
}

GroupElement FreeCarrier::multiply(const GroupElement& x, const GroupElement& y) const {
  return encode(decode(x) * decode(y));
}

GroupElement FreeCarrier::inverse(const GroupElement& x) const { return encode(decode(x).inverse()); }

Word FreeCarrier::to_word(const GroupElement& x) const { return decode(x); }

GroupElement FreeCarrier::conjugacy_representative(const GroupElement& x) const {
  const GroupElement core = encode(cyclically_reduce(decode(x)).core);
  GroupElement best = core;
  GroupElement rotated = core;
  for (std::size_t i = 1; i < core.key.size(); ++i) {
    std::rotate(rotated.key.begin(), rotated.key.begin() + 1, rotated.key.end());
    if (rotated < best) best = rotated;
  }
  return best;
}

// --- BaumslagSolitarCarrier -------------------------------------------------

BaumslagSolitarCarrier::BaumslagSolitarCarrier(std::int64_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("BS(1,n) requires n >= 1");
}

GroupElement BaumslagSolitarCarrier::normal_form(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t n) {
  // t^-1 a^(nq) t = a^q
  while (p > 0 && r > 0 && q % n == 0) {
    q /= n;
    --p;
    --r;
  }
  return {{p, q, r}};
}

GroupElement BaumslagSolitarCarrier::multiply(const GroupElement& x, const GroupElement& y) const {
  const std::int64_t p1 = x.key[0], q1 = x.key[1], r1 = x.key[2];
  const std::int64_t p2 = y.key[0], q2 = y.key[1], r2 = y.key[2];
  const std::int64_t m = r1 - p2;
  if (m >= 0) {
    // a^q1 t^m a^q2 = a^(q1 + n^m q2) t^m
    return normal_form(p1, checked_add(q1, checked_mul(checked_pow(n_, m), q2)), checked_add(m, r2), n_);
  }
  // a^q1 t^-k a^q2 = t^-k a^(n^k q1 + q2)
  const std::int64_t k = -m;
  return normal_form(checked_add(p1, k), checked_add(checked_mul(checked_pow(n_, k), q1), q2), r2, n_);
}

GroupElement BaumslagSolitarCarrier::inverse(const GroupElement& x) const {
  return normal_form(x.key[2], -x.key[1], x.key[0], n_);
}

Word BaumslagSolitarCarrier::to_word(const GroupElement& x) const {
  return Word::generator(1).pow(-x.key[0]) * Word::generator(0).pow(x.key[1]) * Word::generator(1).pow(x.key[2]);
}

GroupElement BaumslagSolitarCarrier::generator_element(std::uint32_t g) const {
  return g == 0 ? GroupElement{{0, 1, 0}} : GroupElement{{0, 0, 1}};
}

// --- factories --------------------------------------------------------------

CarrierPtr make_finite_carrier(const FiniteGroup& g, std::string name) {
  return std::make_shared<FiniteCarrier>(g, std::move(name));
}
CarrierPtr make_free_abelian(std::size_t rank) { return std::make_shared<FreeAbelianCarrier>(rank); }
CarrierPtr make_free_group(std::size_t rank) { return std::make_shared<FreeCarrier>(rank); }
CarrierPtr make_baumslag_solitar(std::int64_t n) { return std::make_shared<BaumslagSolitarCarrier>(n); }

CarrierPtr make_cyclic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("C_n requires n >= 1");
  const Presentation p({"a"}, {Word::generator(0).pow(static_cast<std::int64_t>(n))});
  return make_finite_carrier(realize_presentation(p), "C_" + std::to_string(n));
}

CarrierHom CarrierHom::identity(const CarrierPtr& group) {
  return {group, group, [](const GroupElement& x) { return x; }};
}

CarrierHom CarrierHom::from_generator_images(const CarrierPtr& source, const CarrierPtr& target,
                                             std::vector<GroupElement> images) {
  if (images.size() != source->generator_count()) throw std::invalid_argument("CarrierHom: image count mismatch");
  auto map = [source, target, images = std::move(images)](const GroupElement& x) {
    GroupElement y = target->identity();
    const Word w = source->to_word(x);
    for (const Letter l : w.letters()) {
      y = target->multiply(y, l.inverse ? target->inverse(images[l.gen]) : images[l.gen]);
    }
    return y;
  };
  return {source, target, std::move(map)};
}

CarrierHom CarrierHom::from_finite(const FiniteHom& h, const CarrierPtr& source, const CarrierPtr& target) {
  const auto* src = dynamic_cast<const FiniteCarrier*>(source.get());
  const auto* dst = dynamic_cast<const FiniteCarrier*>(target.get());
  if (src == nullptr || dst == nullptr || !src->group().same_as(h.source()) || !dst->group().same_as(h.target())) {
    throw CapabilityError("CarrierHom::from_finite: carriers do not wrap the homomorphism's groups");
  }
  auto map = [h, source, target](const GroupElement& x) {
    const auto& s = static_cast<const FiniteCarrier&>(*source);
    const auto& t = static_cast<const FiniteCarrier&>(*target);
    return t.element(h(s.index(x)));
  };
  return {source, target, std::move(map)};
}

}  // namespace weakcomm
