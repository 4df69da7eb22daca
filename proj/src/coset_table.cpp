#include "weakcomm/coset_table.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace weakcomm {

LimitExceeded::LimitExceeded(Kind kind, std::size_t limit)
    : std::runtime_error(std::string("coset enumeration inconclusive: ") +
                         (kind == Kind::cosets ? "coset" : "definition") + " limit " + std::to_string(limit) +
                         " exceeded"),
      kind_(kind),
      limit_(limit) {}

// --- Permutation -----------------------------------------------------------

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.images.resize(n);
  std::iota(p.images.begin(), p.images.end(), 0U);
  return p;
}

bool Permutation::is_identity() const {
  for (std::uint32_t i = 0; i < images.size(); ++i) {
    if (images[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images.resize(images.size());
  for (std::uint32_t i = 0; i < images.size(); ++i) out.images[images[i]] = i;
  return out;
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(images.size(), false);
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::uint32_t j = i; !seen[j]; j = images[j]) {
      seen[j] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("permutation degree mismatch");
  Permutation out;
  out.images.resize(p.degree());
  for (std::size_t i = 0; i < p.degree(); ++i) out.images[i] = q.images[p.images[i]];
  return out;
}

// --- CosetTable ------------------------------------------------------------

CosetTable::CosetTable(Presentation presentation, std::vector<Word> subgroup, std::size_t cosets,
                       std::vector<std::int32_t> entries)
    : presentation_(std::move(presentation)),
      subgroup_(std::move(subgroup)),
      cosets_(cosets),
      columns_(2 * presentation_.generator_count()),
      entries_(std::move(entries)) {
  if (cosets_ == 0) throw std::invalid_argument("coset table: needs at least the subgroup coset");
  if (entries_.size() != cosets_ * columns_) throw std::invalid_argument("coset table: entry count mismatch");
  for (const auto& w : subgroup_) {
    if (w.generator_bound() > presentation_.generator_count()) {
      throw std::invalid_argument("coset table: subgroup word outside the presentation");
    }
  }
  for (std::size_t c = 0; c < cosets_; ++c) {
    for (std::size_t x = 0; x < columns_; ++x) {
      const std::int32_t d = entry(c, x);
      if (d == undefined) continue;
      if (d < 0 || static_cast<std::size_t>(d) >= cosets_) throw std::invalid_argument("coset table: entry out of range");
      if (entry(static_cast<std::size_t>(d), x ^ 1U) != static_cast<std::int32_t>(c)) {
        throw std::invalid_argument("coset table: inconsistent inverse entries");
      }
    }
  }
}

bool CosetTable::closed() const {
  return std::none_of(entries_.begin(), entries_.end(), [](std::int32_t e) { return e == undefined; });
}

std::uint32_t CosetTable::trace(std::uint32_t coset, const Word& w) const {
  std::int32_t c = static_cast<std::int32_t>(coset);
  for (const Letter l : w.letters()) {
    c = entry(static_cast<std::size_t>(c), l.column());
    if (c == undefined) throw std::logic_error("coset table: trace through an undefined entry");
  }
  return static_cast<std::uint32_t>(c);
}

CosetTable CosetTable::relabel(std::span<const std::uint32_t> mapping) const {
  if (mapping.size() != cosets_ || mapping[0] != 0) {
    throw std::invalid_argument("coset relabel: mapping must be a permutation fixing coset 0");
  }
  std::vector<std::int32_t> out(entries_.size(), undefined);
  for (std::size_t c = 0; c < cosets_; ++c) {
    for (std::size_t x = 0; x < columns_; ++x) {
      const std::int32_t d = entry(c, x);
      out[mapping[c] * columns_ + x] = d == undefined ? undefined : static_cast<std::int32_t>(mapping[d]);
    }
  }
  return CosetTable(presentation_, subgroup_, cosets_, std::move(out));
}

std::string CosetTable::dump() const {
  std::ostringstream out;
  out << "# coset table presentation=" << fnv1a_hex(presentation_.to_string()) << " subgroup=[";
  for (std::size_t i = 0; i < subgroup_.size(); ++i) {
    out << (i ? ", " : "") << presentation_.format_word(subgroup_[i]);
  }
  out << "] cosets=" << cosets_ << "\n#";
  for (std::size_t x = 0; x < columns_; ++x) {
    const Letter l = Letter::from_column(static_cast<std::uint32_t>(x));
    out << ' ' << presentation_.generators()[l.gen] << (l.inverse ? "^-1" : "");
  }
  out << '\n';
  for (std::size_t c = 0; c < cosets_; ++c) {
    out << c + 1 << ':';
    for (std::size_t x = 0; x < columns_; ++x) {
      const std::int32_t d = entry(c, x);
      out << ' ';
      if (d == undefined) {
        out << '-';
      } else {
        out << d + 1;
      }
    }
    out << '\n';
  }
  return out.str();
}

// --- Enumeration -----------------------------------------------------------

namespace {

class Enumerator {
 public:
  Enumerator(const Presentation& p, const std::vector<Word>& subgroup, const EnumerationLimits& limits)
      : columns_(2 * p.generator_count()), limits_(limits) {
    if (limits.max_cosets == 0 || limits.max_definitions == 0) {
      throw std::invalid_argument("enumeration limits must be positive");
    }
    for (const auto& r : p.relators()) relators_.push_back(to_columns(r));
    for (const auto& h : subgroup) {
      if (h.generator_bound() > p.generator_count()) {
        throw std::invalid_argument("subgroup word uses a generator outside the presentation");
      }
      if (!h.empty()) subgroup_.push_back(to_columns(h));
    }
    std::size_t total = 0;
    for (const auto& r : relators_) total += r.size();
    // Keep enough headroom so one coset's relator pass cannot overrun the hard limit.
    margin_ = std::min(total + columns_ + 1, limits.max_cosets / 2);
    threshold_ = std::min<std::size_t>(std::max<std::size_t>(4096, 8 * margin_), hard_threshold());
    new_coset();
  }

  std::vector<std::int32_t> run(EnumerationStats* stats) {
    for (const auto& h : subgroup_) scan_and_fill(0, h);
    for (;;) {
      std::size_t alpha = 0;
      while (alpha < allocated()) {
        if (alive(alpha)) process(static_cast<std::int32_t>(alpha));
        ++alpha;
        if (allocated() >= threshold_) make_room(alpha);
      }
      if (complete()) break;
    }
    compact(nullptr);
    if (stats != nullptr) {
      stats->definitions = definitions_;
      stats->max_live = max_live_;
      stats->lookaheads = lookaheads_;
    }
    return std::move(table_);
  }

  std::size_t allocated() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> to_columns(const Word& w) const {
    std::vector<std::uint32_t> out;
    out.reserve(w.length());
    for (const Letter l : w.letters()) out.push_back(l.column());
    return out;
  }

  std::size_t hard_threshold() const { return limits_.max_cosets - margin_; }

  std::int32_t& at(std::int32_t c, std::uint32_t x) { return table_[static_cast<std::size_t>(c) * columns_ + x]; }

  bool alive(std::size_t c) const { return parent_[c] == static_cast<std::int32_t>(c); }

  std::int32_t new_coset() {
    if (allocated() >= limits_.max_cosets) throw LimitExceeded(LimitExceeded::Kind::cosets, limits_.max_cosets);
    const auto c = static_cast<std::int32_t>(allocated());
    parent_.push_back(c);
    table_.resize(table_.size() + columns_, CosetTable::undefined);
    ++live_;
    max_live_ = std::max(max_live_, live_);
    return c;
  }

  void define(std::int32_t c, std::uint32_t x) {
    if (++definitions_ > limits_.max_definitions) {
      throw LimitExceeded(LimitExceeded::Kind::definitions, limits_.max_definitions);
    }
    const std::int32_t d = new_coset();
    at(c, x) = d;
    at(d, x ^ 1U) = c;
  }

  void process(std::int32_t alpha) {
    for (const auto& r : relators_) {
      scan_and_fill(alpha, r);
      if (!alive(static_cast<std::size_t>(alpha))) return;
    }
    for (std::uint32_t x = 0; x < columns_; ++x) {
      if (at(alpha, x) == CosetTable::undefined) define(alpha, x);
    }
  }

  void scan_and_fill(std::int32_t c, const std::vector<std::uint32_t>& w) {
    if (w.empty()) return;
    std::int32_t f = c;
    std::int32_t b = c;
    std::size_t i = 0;
    std::size_t j = w.size();  // one past the last unscanned letter
    for (;;) {
      while (i < j && at(f, w[i]) != CosetTable::undefined) f = at(f, w[i++]);
      if (i == j) {
        if (f != c) coincidence(f, c);
        return;
      }
      while (j > i && at(b, w[j - 1] ^ 1U) != CosetTable::undefined) b = at(b, w[--j] ^ 1U);
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        at(f, w[i]) = b;
        at(b, w[i] ^ 1U) = f;
        return;
      }
      define(f, w[i]);
    }
  }

  // Scan without defining; records deductions and coincidences only.
  void scan(std::int32_t c, const std::vector<std::uint32_t>& w) {
    if (w.empty()) return;
    std::int32_t f = c;
    std::int32_t b = c;
    std::size_t i = 0;
    std::size_t j = w.size();
    while (i < j && at(f, w[i]) != CosetTable::undefined) f = at(f, w[i++]);
    if (i == j) {
      if (f != c) coincidence(f, c);
      return;
    }
    while (j > i && at(b, w[j - 1] ^ 1U) != CosetTable::undefined) b = at(b, w[--j] ^ 1U);
    if (j == i) {
      coincidence(f, b);
    } else if (j == i + 1) {
      at(f, w[i]) = b;
      at(b, w[i] ^ 1U) = f;
    }
  }

  std::int32_t rep(std::int32_t c) {
    std::int32_t r = c;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(c)] != r) {
      const std::int32_t next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }

  void merge(std::int32_t k, std::int32_t l) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    const std::int32_t lo = std::min(k, l);
    const std::int32_t hi = std::max(k, l);
    parent_[static_cast<std::size_t>(hi)] = lo;
    --live_;
    queue_.push_back(hi);
  }

  void coincidence(std::int32_t a, std::int32_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      const std::int32_t g = queue_[qi];
      for (std::uint32_t x = 0; x < columns_; ++x) {
        const std::int32_t d = at(g, x);
        if (d == CosetTable::undefined) continue;
        at(g, x) = CosetTable::undefined;
        if (at(d, x ^ 1U) == g) at(d, x ^ 1U) = CosetTable::undefined;
        const std::int32_t mu = rep(g);
        const std::int32_t nu = rep(d);
        if (at(mu, x) != CosetTable::undefined) {
          merge(nu, at(mu, x));
        } else if (at(nu, x ^ 1U) != CosetTable::undefined) {
          merge(mu, at(nu, x ^ 1U));
        } else {
          at(mu, x) = nu;
          at(nu, x ^ 1U) = mu;
        }
      }
    }
    queue_.clear();
  }

  bool complete() {
    for (std::size_t c = 0; c < allocated(); ++c) {
      if (!alive(c)) continue;
      for (std::uint32_t x = 0; x < columns_; ++x) {
        if (at(static_cast<std::int32_t>(c), x) == CosetTable::undefined) return false;
      }
    }
    return true;
  }

  void make_room(std::size_t& alpha) {
    ++lookaheads_;
    for (std::size_t c = alpha; c < allocated(); ++c) {
      for (const auto& r : relators_) {
        if (!alive(c)) break;
        scan(static_cast<std::int32_t>(c), r);
      }
    }
    compact(&alpha);
    if (allocated() + margin_ >= threshold_) {
      if (threshold_ >= hard_threshold()) {
        // Lookahead could not free space; the next definitions will hit the hard limit.
        threshold_ = limits_.max_cosets + 1;
      } else {
        threshold_ = std::min(threshold_ * 2, hard_threshold());
      }
    }
  }

  // Drops dead cosets, preserving the relative order of live ones.
  void compact(std::size_t* alpha) {
    const std::size_t n = allocated();
    std::vector<std::int32_t> map(n, CosetTable::undefined);
    std::int32_t next = 0;
    std::size_t new_alpha = 0;
    bool alpha_set = false;
    for (std::size_t c = 0; c < n; ++c) {
      if (alpha != nullptr && !alpha_set && c >= *alpha) {
        new_alpha = static_cast<std::size_t>(next);
        alpha_set = true;
      }
      if (alive(c)) map[c] = next++;
    }
    if (alpha != nullptr) *alpha = alpha_set ? new_alpha : static_cast<std::size_t>(next);
    std::vector<std::int32_t> table(static_cast<std::size_t>(next) * columns_);
    for (std::size_t c = 0; c < n; ++c) {
      if (map[c] == CosetTable::undefined) continue;
      for (std::uint32_t x = 0; x < columns_; ++x) {
        const std::int32_t d = at(static_cast<std::int32_t>(c), x);
        table[static_cast<std::size_t>(map[c]) * columns_ + x] =
            d == CosetTable::undefined ? CosetTable::undefined : map[static_cast<std::size_t>(d)];
      }
    }
    table_ = std::move(table);
    parent_.resize(static_cast<std::size_t>(next));
    std::iota(parent_.begin(), parent_.end(), 0);
    live_ = static_cast<std::size_t>(next);
  }

  std::size_t columns_;
  EnumerationLimits limits_;
  std::vector<std::vector<std::uint32_t>> relators_;
  std::vector<std::vector<std::uint32_t>> subgroup_;
  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> queue_;
  std::size_t live_ = 0;
  std::size_t max_live_ = 0;
  std::size_t definitions_ = 0;
  std::size_t lookaheads_ = 0;
  std::size_t margin_ = 0;
  std::size_t threshold_ = 0;
};

}  // namespace

CosetTable enumerate(const Presentation& p, const std::vector<Word>& subgroup, const EnumerationLimits& limits,
                     EnumerationStats* stats) {
  Enumerator e(p, subgroup, limits);
  std::vector<std::int32_t> entries = e.run(stats);
  const std::size_t cosets = entries.size() / std::max<std::size_t>(1, 2 * p.generator_count());
  const std::size_t count = p.generator_count() == 0 ? 1 : cosets;
  CosetTable table = standardize(CosetTable(p, subgroup, count, std::move(entries)));
  if (const std::string problem = audit(table); !problem.empty()) {
    throw std::logic_error("coset enumeration produced an invalid table: " + problem);
  }
  return table;
}

CosetTable standardize(const CosetTable& t) {
  if (!t.closed()) throw std::invalid_argument("standardize: coset table is not closed");
  const std::size_t n = t.cosets();
  std::vector<std::int32_t> order(n, CosetTable::undefined);
  std::vector<std::uint32_t> queue;
  queue.reserve(n);
  order[0] = 0;
  queue.push_back(0);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto row = t.row(queue[qi]);
    for (const std::int32_t d : row) {
      if (order[static_cast<std::size_t>(d)] == CosetTable::undefined) {
        order[static_cast<std::size_t>(d)] = static_cast<std::int32_t>(queue.size());
        queue.push_back(static_cast<std::uint32_t>(d));
      }
    }
  }
  if (queue.size() != n) throw std::invalid_argument("standardize: coset action is not transitive");
  std::vector<std::uint32_t> mapping(order.begin(), order.end());
  return t.relabel(mapping);
}

std::string audit(const CosetTable& t) {
  if (!t.closed()) return "table not closed";
  const std::size_t n = t.cosets();
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t x = 0; x < t.columns(); ++x) {
      const auto d = static_cast<std::size_t>(t.entry(c, x));
      if (t.entry(d, x ^ 1U) != static_cast<std::int32_t>(c)) return "inconsistent entry at coset " + std::to_string(c + 1);
    }
  }
  for (const auto& r : t.presentation().relators()) {
    for (std::uint32_t c = 0; c < n; ++c) {
      if (t.trace(c, r) != c) {
        return "relator " + t.presentation().format_word(r) + " does not close at coset " + std::to_string(c + 1);
      }
    }
  }
  for (const auto& h : t.subgroup()) {
    if (t.trace(0, h) != 0) return "subgroup generator " + t.presentation().format_word(h) + " moves coset 1";
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t c = stack.back();
    stack.pop_back();
    for (const std::int32_t d : t.row(c)) {
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = true;
        ++reached;
        stack.push_back(static_cast<std::size_t>(d));
      }
    }
  }
  if (reached != n) return "coset action is not transitive";
  return {};
}

std::vector<Permutation> permutation_rep(const CosetTable& t) {
  if (!t.closed()) throw std::invalid_argument("permutation_rep: coset table is not closed");
  std::vector<Permutation> perms;
  for (std::uint32_t g = 0; g < t.presentation().generator_count(); ++g) {
    Permutation p;
    p.images.resize(t.cosets());
    for (std::size_t c = 0; c < t.cosets(); ++c) p.images[c] = static_cast<std::uint32_t>(t.entry(c, 2 * g));
    perms.push_back(std::move(p));
  }
  return perms;
}

Permutation word_image(const CosetTable& t, const Word& w) {
  if (!t.closed()) throw std::invalid_argument("word_image: coset table is not closed");
  Permutation p;
  p.images.resize(t.cosets());
  for (std::uint32_t c = 0; c < t.cosets(); ++c) p.images[c] = t.trace(c, w);
  return p;
}

}  // namespace weakcomm
