#include "weakcomm/finite_group.hpp"

#include <algorithm>
#include <stdexcept>

namespace weakcomm {

namespace {
constexpr std::size_t kCayleyTableLimit = 4096;
constexpr Element kUnset = static_cast<Element>(-1);
}  // namespace

FiniteGroup FiniteGroup::realize(const CosetTable& table) {
  for (const auto& h : table.subgroup()) {
    if (!h.empty()) throw std::invalid_argument("realize: coset table must be over the trivial subgroup");
  }
  const CosetTable t = standardize(table);
  auto data = std::make_shared<Data>();
  data->presentation = t.presentation();
  const std::size_t n = t.cosets();
  const std::size_t cols = t.columns();
  data->right.assign(cols, std::vector<Element>(n));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t x = 0; x < cols; ++x) data->right[x][c] = static_cast<Element>(t.entry(c, x));
  }
  // BFS in column order; standardization already numbers cosets in this order.
  data->words.assign(n, Word{});
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::vector<Element> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Element x = queue[qi];
    for (std::uint32_t col = 0; col < cols; ++col) {
      const Element y = data->right[col][x];
      if (seen[y]) continue;
      seen[y] = true;
      data->words[y] = data->words[x] * Word{Letter::from_column(col)};
      queue.push_back(y);
    }
  }
  data->inverse.resize(n);
  for (Element x = 0; x < n; ++x) {
    Element y = 0;
    const Word inv = data->words[x].inverse();
    for (const Letter l : inv.letters()) y = data->right[l.column()][y];
    data->inverse[x] = y;
  }
  FiniteGroup g(data);
  if (n <= kCayleyTableLimit) {
    data->table.resize(n * n);
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        Element z = x;
        for (const Letter l : data->words[y].letters()) z = data->right[l.column()][z];
        data->table[static_cast<std::size_t>(x) * n + y] = z;
      }
    }
  }
  return g;
}

FiniteGroup realize_presentation(const Presentation& p, const EnumerationLimits& limits) {
  return FiniteGroup::realize(enumerate(p, {}, limits));
}

Element FiniteGroup::multiply(Element x, Element y) const {
  if (!data_->table.empty()) return data_->table[static_cast<std::size_t>(x) * order() + y];
  for (const Letter l : data_->words[y].letters()) x = act(x, l);
  return x;
}

Element FiniteGroup::power(Element x, std::int64_t n) const {
  Element base = n < 0 ? inverse(x) : x;
  std::uint64_t e = n < 0 ? -static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
  Element result = identity();
  while (e > 0) {
    if ((e & 1U) != 0) result = multiply(result, base);
    base = multiply(base, base);
    e >>= 1U;
  }
  return result;
}

Element FiniteGroup::commutator(Element x, Element y) const {
  return multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
}

Element FiniteGroup::conjugate(Element x, Element by) const { return multiply(multiply(inverse(by), x), by); }

Element FiniteGroup::element_of(const Word& w) const {
  if (w.generator_bound() > generator_count()) throw std::out_of_range("element_of: word outside the group");
  Element x = identity();
  for (const Letter l : w.letters()) x = act(x, l);
  return x;
}

std::uint64_t FiniteGroup::element_order(Element x) const {
  std::uint64_t n = 1;
  for (Element y = x; y != identity(); y = multiply(y, x)) ++n;
  return n;
}

// --- Subgroups --------------------------------------------------------------

Subgroup::Subgroup(FiniteGroup parent, std::vector<Element> elements, std::vector<Element> generators)
    : parent_(std::move(parent)), elements_(std::move(elements)), generators_(std::move(generators)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (elements_.empty() || elements_.front() != FiniteGroup::identity()) {
    throw std::invalid_argument("subgroup must contain the identity");
  }
  if (parent_.order() % elements_.size() != 0) throw std::logic_error("subgroup order does not divide group order");
}

bool Subgroup::contains(Element x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

namespace {

// Closure of {e} under right multiplication by `step` and conjugation by `conjugators`.
std::vector<Element> closure(const FiniteGroup& g, std::span<const Element> step, std::span<const Element> conjugators) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> members{FiniteGroup::identity()};
  in[0] = true;
  auto add = [&](Element y) {
    if (!in[y]) {
      in[y] = true;
      members.push_back(y);
    }
  };
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Element x = members[i];
    for (const Element s : step) add(g.multiply(x, s));
    for (const Element c : conjugators) add(g.conjugate(x, c));
  }
  return members;
}

std::vector<Element> group_generators(const FiniteGroup& g) {
  std::vector<Element> gens;
  for (std::uint32_t i = 0; i < g.generator_count(); ++i) gens.push_back(g.generator(i));
  return gens;
}

}  // namespace

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Element> generators) {
  return Subgroup(g, closure(g, generators, {}), {generators.begin(), generators.end()});
}

Subgroup normal_closure(const FiniteGroup& g, std::span<const Element> generators) {
  const auto conj = group_generators(g);
  return Subgroup(g, closure(g, generators, conj), {generators.begin(), generators.end()});
}

Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Element> all(g.order());
  for (Element x = 0; x < all.size(); ++x) all[x] = x;
  return Subgroup(g, std::move(all), group_generators(g));
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  if (!a.parent().same_as(b.parent())) throw std::invalid_argument("intersection: subgroups of different groups");
  std::vector<Element> common;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(common));
  return Subgroup(a.parent(), common, common);
}

// --- Homomorphisms ----------------------------------------------------------

FiniteHom::FiniteHom(FiniteGroup source, FiniteGroup target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.generator_count()) throw std::invalid_argument("FiniteHom: image count mismatch");
  auto evaluate = [&](const Word& w) {
    Element y = FiniteGroup::identity();
    for (const Letter l : w.letters()) {
      const Element img = l.inverse ? target_.inverse(images_[l.gen]) : images_[l.gen];
      y = target_.multiply(y, img);
    }
    return y;
  };
  for (const auto& r : source_.presentation().relators()) {
    if (evaluate(r) != FiniteGroup::identity()) {
      throw std::invalid_argument("FiniteHom: relator " + source_.presentation().format_word(r) +
                                  " does not map to the identity");
    }
  }
  table_.assign(source_.order(), kUnset);
  table_[0] = FiniteGroup::identity();
  std::vector<Element> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Element x = queue[qi];
    for (std::uint32_t col = 0; col < 2 * source_.generator_count(); ++col) {
      const Letter l = Letter::from_column(col);
      const Element y = source_.act(x, l);
      if (table_[y] != kUnset) continue;
      const Element img = l.inverse ? target_.inverse(images_[l.gen]) : images_[l.gen];
      table_[y] = target_.multiply(table_[x], img);
      queue.push_back(y);
    }
  }
}

KernelImage kernel_and_image(const FiniteHom& h) {
  std::vector<Element> kernel;
  std::vector<Element> image;
  for (Element x = 0; x < h.source().order(); ++x) {
    if (h(x) == FiniteGroup::identity()) kernel.push_back(x);
    image.push_back(h(x));
  }
  Subgroup k(h.source(), kernel, kernel);
  Subgroup im(h.target(), image, h.images());
  if (k.order() * im.order() != h.source().order()) throw std::logic_error("kernel_and_image: Lagrange check failed");
  return {std::move(k), std::move(im)};
}

// --- Structure --------------------------------------------------------------

Subgroup center(const FiniteGroup& g) {
  const auto gens = group_generators(g);
  std::vector<Element> members;
  for (Element x = 0; x < g.order(); ++x) {
    if (std::all_of(gens.begin(), gens.end(), [&](Element s) { return g.multiply(x, s) == g.multiply(s, x); })) {
      members.push_back(x);
    }
  }
  return Subgroup(g, members, members);
}

Subgroup derived_subgroup(const FiniteGroup& g) {
  const auto gens = group_generators(g);
  std::vector<Element> comms;
  for (const Element s : gens) {
    for (const Element t : gens) {
      const Element c = g.commutator(s, t);
      if (c != FiniteGroup::identity() && std::find(comms.begin(), comms.end(), c) == comms.end()) comms.push_back(c);
    }
  }
  return normal_closure(g, comms);
}

bool is_central(const Subgroup& s) {
  const FiniteGroup& g = s.parent();
  for (const Element x : s.elements()) {
    for (std::uint32_t i = 0; i < g.generator_count(); ++i) {
      const Element t = g.generator(i);
      if (g.multiply(x, t) != g.multiply(t, x)) return false;
    }
  }
  return true;
}

bool is_normal(const Subgroup& s) {
  const FiniteGroup& g = s.parent();
  for (const Element x : s.elements()) {
    for (std::uint32_t i = 0; i < g.generator_count(); ++i) {
      if (!s.contains(g.conjugate(x, g.generator(i)))) return false;
    }
  }
  return true;
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
  const auto gens = group_generators(g);
  ConjugacyClasses out;
  out.class_of.assign(g.order(), static_cast<std::uint32_t>(-1));
  for (Element x = 0; x < g.order(); ++x) {
    if (out.class_of[x] != static_cast<std::uint32_t>(-1)) continue;
    const auto id = static_cast<std::uint32_t>(out.classes.size());
    std::vector<Element> cls{x};
    out.class_of[x] = id;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (const Element s : gens) {
        const Element y = g.conjugate(cls[i], s);
        if (out.class_of[y] == static_cast<std::uint32_t>(-1)) {
          out.class_of[y] = id;
          cls.push_back(y);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

}  // namespace weakcomm
