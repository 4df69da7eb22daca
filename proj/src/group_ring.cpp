#include "weakcomm/group_ring.hpp"

#include <cctype>

namespace weakcomm {

// --- RingElement ------------------------------------------------------------

RingElement::RingElement(CarrierPtr group) : group_(std::move(group)) {
  if (!group_) throw std::invalid_argument("ring element needs a group");
}

RingElement::RingElement(CarrierPtr group, const Rational& scalar) : RingElement(std::move(group)) {
  add_term(group_->identity(), scalar);
}

RingElement::RingElement(CarrierPtr group, const GroupElement& g, const Rational& coefficient)
    : RingElement(std::move(group)) {
  add_term(g, coefficient);
}

RingElement RingElement::one(CarrierPtr group) {
  auto id = group->identity();
  return RingElement(std::move(group), id, 1);
}

std::vector<GroupElement> RingElement::support() const {
  std::vector<GroupElement> out;
  out.reserve(terms_.size());
  for (const auto& [g, c] : terms_) out.push_back(g);
  return out;
}

Rational RingElement::coefficient(const GroupElement& g) const {
  const auto it = terms_.find(g);
  return it == terms_.end() ? Rational(0) : it->second;
}

void RingElement::add_term(const GroupElement& g, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void RingElement::check_same(const RingElement& other) const {
  if (group_ != other.group_) {
    throw GroupMismatch("group ring elements over different groups: " + group_->name() + " vs " +
                        other.group_->name());
  }
}

RingElement RingElement::operator-() const { return scaled(-1); }

RingElement& RingElement::operator+=(const RingElement& rhs) {
  check_same(rhs);
  for (const auto& [g, c] : rhs.terms_) add_term(g, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& rhs) {
  check_same(rhs);
  for (const auto& [g, c] : rhs.terms_) add_term(g, -c);
  return *this;
}

RingElement operator*(const RingElement& lhs, const RingElement& rhs) {
  lhs.check_same(rhs);
  RingElement out(lhs.group_);
  for (const auto& [g, a] : lhs.terms_) {
    for (const auto& [h, b] : rhs.terms_) out.add_term(lhs.group_->multiply(g, h), a * b);
  }
  return out;
}

RingElement RingElement::scaled(const Rational& c) const {
  RingElement out(group_);
  if (sgn(c) == 0) return out;
  for (const auto& [g, a] : terms_) out.terms_.emplace(g, a * c);
  return out;
}

bool operator==(const RingElement& a, const RingElement& b) { return a.group_ == b.group_ && a.terms_ == b.terms_; }

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [g, c] : terms_) {
    Rational mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    out += mag.get_str() + "*" + group_->format(g);
  }
  return out;
}

namespace {

Rational parse_rational(std::string_view text) {
  Rational q;
  if (q.set_str(std::string(text), 10) != 0) throw std::invalid_argument("bad rational '" + std::string(text) + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
  return s;
}

}  // namespace

RingElement parse_ring_element(const CarrierPtr& group, std::string_view text) {
  const Presentation names(group->generator_names(), {});
  const bool e_is_generator = names.find_generator("e").has_value();
  RingElement out(group);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])) != 0) ++pos;
  };
  skip();
  if (pos == text.size()) throw std::invalid_argument("empty ring element literal");
  bool first = true;
  while (pos < text.size()) {
    Rational sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1;
      ++pos;
      skip();
    } else if (!first) {
      throw std::invalid_argument("expected '+' or '-' in ring element literal");
    }
    first = false;
    // Extent of this term: up to the next top-level '+'/'-' not following '^'.
    std::size_t end = pos;
    int depth = 0;
    char last = '\0';
    for (; end < text.size(); ++end) {
      const char c = text[end];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (depth == 0 && (c == '+' || c == '-') && last != '^' && end > pos) break;
      if (std::isspace(static_cast<unsigned char>(c)) == 0) last = c;
    }
    std::string_view term = trim(text.substr(pos, end - pos));
    pos = end;
    if (term.empty()) throw std::invalid_argument("empty term in ring element literal");
    Rational coeff = 1;
    std::string_view word_text = term;
    if (std::isdigit(static_cast<unsigned char>(term.front())) != 0) {
      std::size_t k = 0;
      while (k < term.size() && (std::isdigit(static_cast<unsigned char>(term[k])) != 0 || term[k] == '/')) ++k;
      coeff = parse_rational(term.substr(0, k));
      word_text = trim(term.substr(k));
      if (word_text.empty()) {
        word_text = "1";
      } else if (word_text.front() == '*') {
        word_text = trim(word_text.substr(1));
      } else {
        throw std::invalid_argument("expected '*' after coefficient in '" + std::string(term) + "'");
      }
    }
    Word w;
    if (!(word_text == "e" && !e_is_generator)) w = names.parse_word(word_text);
    out.add_term(group->from_word(w), sign * coeff);
    skip();
  }
  return out;
}

// --- RingMatrix -------------------------------------------------------------

RingMatrix::RingMatrix(CarrierPtr group, std::size_t n)
    : group_(std::move(group)), n_(n), entries_(n * n, RingElement(group_)) {}

RingMatrix::RingMatrix(std::size_t n, std::vector<RingElement> entries) : n_(n), entries_(std::move(entries)) {
  if (n == 0 || entries_.size() != n * n) throw std::invalid_argument("RingMatrix: need n*n entries, n > 0");
  group_ = entries_.front().group();
  for (const auto& e : entries_) {
    if (e.group() != group_) throw GroupMismatch("RingMatrix: entries over different groups");
  }
}

RingMatrix RingMatrix::identity(const CarrierPtr& group, std::size_t n) {
  RingMatrix m(group, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RingElement::one(group);
  return m;
}

RingMatrix RingMatrix::diagonal(std::vector<RingElement> diag) {
  if (diag.empty()) throw std::invalid_argument("RingMatrix::diagonal: empty diagonal");
  const std::size_t n = diag.size();
  RingMatrix m(diag.front().group(), n);
  for (std::size_t i = 0; i < n; ++i) {
    if (diag[i].group() != m.group_) throw GroupMismatch("RingMatrix::diagonal: entries over different groups");
    m(i, i) = std::move(diag[i]);
  }
  return m;
}

RingMatrix& RingMatrix::operator+=(const RingMatrix& rhs) {
  if (rhs.group_ != group_) throw GroupMismatch("RingMatrix: different groups");
  if (rhs.n_ != n_) throw std::invalid_argument("RingMatrix: size mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

RingMatrix operator-(const RingMatrix& lhs, const RingMatrix& rhs) {
  if (rhs.group_ != lhs.group_) throw GroupMismatch("RingMatrix: different groups");
  if (rhs.n_ != lhs.n_) throw std::invalid_argument("RingMatrix: size mismatch");
  RingMatrix out = lhs;
  for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] -= rhs.entries_[k];
  return out;
}

RingMatrix operator*(const RingMatrix& lhs, const RingMatrix& rhs) {
  if (rhs.group_ != lhs.group_) throw GroupMismatch("RingMatrix: different groups");
  if (rhs.n_ != lhs.n_) throw std::invalid_argument("RingMatrix: size mismatch");
  const std::size_t n = lhs.n_;
  RingMatrix out(lhs.group_, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const RingElement& a = lhs(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!rhs(k, j).is_zero()) out(i, j) += a * rhs(k, j);
      }
    }
  }
  return out;
}

bool operator==(const RingMatrix& a, const RingMatrix& b) {
  return a.group_ == b.group_ && a.n_ == b.n_ && a.entries_ == b.entries_;
}

std::string RingMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    out += i == 0 ? "[" : ", [";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j > 0) out += ", ";
      out += (*this)(i, j).to_string();
    }
    out += "]";
  }
  return out + "]";
}

// --- traces -----------------------------------------------------------------

Rational kappa(const RingElement& x) { return x.coefficient(x.group()->identity()); }

Rational kappa(const RingMatrix& a) {
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += kappa(a(i, i));
  return sum;
}

Rational epsilon(const RingElement& x) {
  Rational sum = 0;
  for (const auto& [g, c] : x.terms()) sum += c;
  return sum;
}

Rational epsilon(const RingMatrix& a) {
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += epsilon(a(i, i));
  return sum;
}

bool is_idempotent(const RingMatrix& a) { return a * a == a; }
bool is_idempotent(const RingElement& x) { return x * x == x; }

RingElement torsion_idempotent(const CarrierPtr& group, const GroupElement& g, std::size_t n) {
  if (n == 0) throw std::invalid_argument("torsion_idempotent: n must be positive");
  RingElement out(group);
  GroupElement power = group->identity();
  const Rational c(1, static_cast<unsigned long>(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && group->is_identity(power)) {
      throw std::invalid_argument("torsion_idempotent: element order is " + std::to_string(k) + ", not " +
                                  std::to_string(n));
    }
    out.add_term(power, c);
    power = group->multiply(power, g);
  }
  if (!group->is_identity(power)) {
    throw std::invalid_argument("torsion_idempotent: g^" + std::to_string(n) + " is not the identity");
  }
  return out;
}

Rational ClassFunction::at(const GroupElement& x) const {
  const auto it = values.find(group->conjugacy_representative(x));
  return it == values.end() ? Rational(0) : it->second;
}

Rational ClassFunction::total() const {
  Rational sum = 0;
  for (const auto& [k, v] : values) sum += v;
  return sum;
}

ClassFunction hattori_stallings(const RingMatrix& a) {
  const CarrierPtr& group = a.group();
  if (!group->has_conjugacy()) {
    throw CapabilityError("Hattori-Stallings trace needs conjugacy classes, unavailable for " + group->name());
  }
  ClassFunction out{group, {}};
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto& [g, c] : a(i, i).terms()) {
      auto [it, inserted] = out.values.try_emplace(group->conjugacy_representative(g), c);
      if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) out.values.erase(it);
      }
    }
  }
  return out;
}

RingElement pushforward(const RingElement& x, const CarrierHom& h) {
  if (x.group() != h.source) throw GroupMismatch("pushforward: element is not over the homomorphism's source");
  RingElement out(h.target);
  for (const auto& [g, c] : x.terms()) out.add_term(h(g), c);
  return out;
}

RingMatrix pushforward(const RingMatrix& a, const CarrierHom& h) {
  std::vector<RingElement> entries;
  entries.reserve(a.size() * a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) entries.push_back(pushforward(a(i, j), h));
  }
  return RingMatrix(a.size(), std::move(entries));
}

bool TraceReport::constraints_hold() const {
  return kappa_nonnegative && epsilon_integral_in_range && kaplansky_dichotomy.value_or(true) &&
         hattori_stallings_consistent.value_or(true);
}

TraceReport trace_audit(const RingMatrix& a) {
  if (!is_idempotent(a)) throw std::invalid_argument("trace_audit: matrix is not idempotent");
  TraceReport r;
  r.kappa = kappa(a);
  r.epsilon = epsilon(a);
  r.delta = r.epsilon - r.kappa;
  r.kappa_nonnegative = sgn(r.kappa) >= 0;
  r.epsilon_integral_in_range =
      r.epsilon.get_den() == 1 && sgn(r.epsilon) >= 0 && r.epsilon <= Rational(static_cast<unsigned long>(a.size()));
  r.weak_bass = sgn(r.delta) == 0;
  if (a.size() == 1) {
    const RingElement& x = a(0, 0);
    const bool trivial = x.is_zero() || x == RingElement::one(a.group());
    const bool kappa_trivial = r.kappa == 0 || r.kappa == 1;
    r.kaplansky_dichotomy = trivial == kappa_trivial;
  }
  if (a.group()->has_conjugacy()) {
    ClassFunction hs = hattori_stallings(a);
    r.hattori_stallings_consistent = hs.at(a.group()->identity()) == r.kappa && hs.total() == r.epsilon;
    r.hattori_stallings = std::move(hs);
  }
  return r;
}

// --- invertibles and corpus -------------------------------------------------

InvertiblePair unit_matrix(std::vector<RingElement> diagonal_units) {
  std::vector<RingElement> inverses;
  for (const auto& u : diagonal_units) {
    if (u.support_size() != 1) throw std::invalid_argument("unit_matrix: entries must be lambda*g");
    const auto& [g, c] = *u.terms().begin();
    inverses.emplace_back(u.group(), u.group()->inverse(g), 1 / c);
  }
  return {RingMatrix::diagonal(std::move(diagonal_units)), RingMatrix::diagonal(std::move(inverses))};
}

InvertiblePair transvection(const CarrierPtr& group, std::size_t n, std::size_t i, std::size_t j, const RingElement& r) {
  if (i == j || i >= n || j >= n) throw std::invalid_argument("transvection: need distinct indices below n");
  InvertiblePair out{RingMatrix::identity(group, n), RingMatrix::identity(group, n)};
  out.u(i, j) = r;
  out.u_inverse(i, j) = -r;
  return out;
}

InvertiblePair compose(const InvertiblePair& first, const InvertiblePair& second) {
  return {first.u * second.u, second.u_inverse * first.u_inverse};
}

RingElement random_ring_element(const CarrierPtr& group, std::mt19937_64& rng, std::size_t max_support,
                                std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> support(1, std::max<std::size_t>(1, max_support));
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<unsigned long> den(1, 3);
  RingElement out(group);
  const std::size_t count = support(rng);
  for (std::size_t k = 0; k < count; ++k) {
    long p = num(rng);
    if (p == 0) p = 1;
    Rational c(p, den(rng));
    c.canonicalize();
    out.add_term(group->random_element(rng, max_length), c);
  }
  return out;
}

InvertiblePair random_invertible(const CarrierPtr& group, std::size_t n, std::mt19937_64& rng, std::size_t factors) {
  InvertiblePair acc{RingMatrix::identity(group, n), RingMatrix::identity(group, n)};
  std::uniform_int_distribution<std::size_t> index(0, n - 1);
  std::bernoulli_distribution pick_unit(n == 1 ? 1.0 : 0.3);
  std::uniform_int_distribution<long> num(1, 3);
  std::bernoulli_distribution negative(0.5);
  for (std::size_t f = 0; f < factors; ++f) {
    if (pick_unit(rng)) {
      std::vector<RingElement> diag;
      for (std::size_t k = 0; k < n; ++k) {
        Rational lambda(num(rng) * (negative(rng) ? -1 : 1), static_cast<unsigned long>(num(rng)));
        lambda.canonicalize();
        diag.emplace_back(group, group->random_element(rng, 2), lambda);
      }
      acc = compose(acc, unit_matrix(std::move(diag)));
    } else {
      const std::size_t i = index(rng);
      std::size_t j = index(rng);
      while (j == i) j = index(rng);
      acc = compose(acc, transvection(group, n, i, j, random_ring_element(group, rng, 3, 2)));
    }
  }
  return acc;
}

RingMatrix conjugated_diagonal_idempotent(const CarrierPtr& group, std::size_t n, std::mt19937_64& rng,
                                          std::size_t factors, std::vector<bool>* diagonal) {
  std::vector<bool> d(n);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t k = 0; k < n; ++k) d[k] = coin(rng);
  if (n >= 2) {
    d[0] = true;
    d[1] = false;
    std::shuffle(d.begin(), d.end(), rng);
  }
  std::vector<RingElement> diag;
  for (std::size_t k = 0; k < n; ++k) diag.emplace_back(group, Rational(d[k] ? 1 : 0));
  const InvertiblePair u = random_invertible(group, n, rng, factors);
  if (diagonal != nullptr) *diagonal = d;
  return u.u * RingMatrix::diagonal(std::move(diag)) * u.u_inverse;
}

TracePropertyResult trace_property_suite(const CarrierPtr& group, std::size_t pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  TracePropertyResult r;
  for (std::size_t i = 0; i < pairs; ++i) {
    const RingElement x = random_ring_element(group, rng, 4, 4);
    const RingElement y = random_ring_element(group, rng, 4, 4);
    ++r.pairs;
    if (kappa(x * y) != kappa(y * x)) ++r.kappa_failures;
    if (epsilon(x * y) != epsilon(x) * epsilon(y) || epsilon(x + y) != epsilon(x) + epsilon(y)) ++r.epsilon_failures;
  }
  return r;
}

}  // namespace weakcomm
