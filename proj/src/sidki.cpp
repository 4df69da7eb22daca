#include "weakcomm/sidki.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "weakcomm/smith.hpp"

namespace weakcomm {

namespace {

Word shift(const Word& w, std::uint32_t offset) {
  std::vector<Letter> letters(w.letters().begin(), w.letters().end());
  for (auto& l : letters) l.gen += offset;
  return Word(std::move(letters));
}

Word copy_generator(std::size_t n, std::size_t copy, std::uint32_t g) {
  return Word::generator(power_generator(n, copy, g));
}

std::vector<std::string> double_generators(const Presentation& base) {
  std::vector<std::string> names = base.generators();
  for (const auto& name : base.generators()) {
    std::string psi_name = name + std::string(kPsiSuffix);
    if (base.find_generator(psi_name)) {
      throw std::invalid_argument("double: base generator '" + psi_name + "' collides with the psi-copy of '" + name +
                                  "'");
    }
    names.push_back(std::move(psi_name));
  }
  return names;
}

std::vector<Word> base_and_psi_relators(const Presentation& base) {
  const auto n = static_cast<std::uint32_t>(base.generator_count());
  std::vector<Word> rels = base.relators();
  for (const auto& r : base.relators()) rels.push_back(shift(r, n));
  return rels;
}

}  // namespace

Word DoubleData::psi(const Word& w) const {
  if (w.generator_bound() > base_generators()) throw std::out_of_range("psi: word is not over the base generators");
  return shift(w, static_cast<std::uint32_t>(base_generators()));
}

DoubleData double_presentation(const Presentation& g, const std::vector<Word>* elements) {
  return double_presentation(g, elements != nullptr ? Schedule::full : Schedule::generators_only, elements);
}

DoubleData double_presentation(const Presentation& g, Schedule schedule, const std::vector<Word>* elements) {
  const std::size_t n = g.generator_count();
  const auto offset = static_cast<std::uint32_t>(n);
  std::vector<Word> rels = base_and_psi_relators(g);
  std::vector<Word> used;
  std::size_t commutators = 0;
  if (schedule == Schedule::full) {
    if (elements == nullptr) throw std::invalid_argument("double: full schedule needs the element enumeration of G");
    used = *elements;
    for (const auto& w : used) {
      if (w.generator_bound() > n) throw std::invalid_argument("double: element word outside the base generators");
      if (w.empty()) continue;
      rels.push_back(commutator(w, shift(w, offset)));
      ++commutators;
    }
  } else {
    for (std::uint32_t i = 0; i < n; ++i) {
      rels.push_back(commutator(Word::generator(i), Word::generator(i + offset)));
      ++commutators;
    }
  }
  Presentation x(double_generators(g), std::move(rels));
  Presentation cube = direct_power(g, 3);
  Presentation pair = direct_power(g, 2);

  std::vector<Word> rho_images(2 * n);
  std::vector<Word> mu_images(2 * n);
  std::vector<Word> omega_images(2 * n);
  std::vector<Word> iota_images(n);
  std::vector<Word> iota_psi_images(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    rho_images[i] = copy_generator(n, 0, i) * copy_generator(n, 1, i);
    rho_images[i + n] = copy_generator(n, 1, i) * copy_generator(n, 2, i);
    mu_images[i] = mu_images[i + n] = Word::generator(i);
    omega_images[i] = copy_generator(n, 0, i);
    omega_images[i + n] = copy_generator(n, 1, i);
    iota_images[i] = Word::generator(i);
    iota_psi_images[i] = Word::generator(i + offset);
  }
  GeneratorMap rho(x, cube, std::move(rho_images));
  GeneratorMap mu(x, g, std::move(mu_images));
  GeneratorMap omega(x, pair, std::move(omega_images));
  GeneratorMap iota(g, x, std::move(iota_images));
  GeneratorMap iota_psi(g, x, std::move(iota_psi_images));
  return DoubleData{g,
                    std::move(x),
                    schedule,
                    schedule == Schedule::generators_only,
                    std::move(used),
                    commutators,
                    std::move(cube),
                    std::move(pair),
                    std::move(rho),
                    std::move(mu),
                    std::move(omega),
                    std::move(iota),
                    std::move(iota_psi)};
}

DoubleData full_double(const FiniteGroup& g) { return double_presentation(g.presentation(), Schedule::full, &g.words()); }

RoccoPresentation rocco_presentation(const FiniteGroup& g) {
  const Presentation& base = g.presentation();
  const auto offset = static_cast<std::uint32_t>(base.generator_count());
  std::vector<Word> rels = base_and_psi_relators(base);
  const std::size_t order = g.order();
  std::size_t candidates = 0;
  for (Element a = 0; a < order; ++a) {
    for (Element b = 0; b < order; ++b) {
      const Word c = commutator(g.word(a), shift(g.word(b), offset));
      for (Element k = 0; k < order; ++k) {
        const Word rhs = commutator(g.word(g.conjugate(a, k)), shift(g.word(g.conjugate(b, k)), offset));
        for (const bool psi : {false, true}) {
          const Word by = psi ? shift(g.word(k), offset) : g.word(k);
          rels.push_back(conjugate(c, by) * rhs.inverse());
          ++candidates;
        }
      }
    }
  }
  return {Presentation(double_generators(base), std::move(rels)), candidates};
}

// --- word problems ----------------------------------------------------------

std::optional<IdentityOracle> base_oracle(const Presentation& g, const FiniteGroup* realized) {
  if (realized != nullptr) {
    if (!(realized->presentation() == g)) throw std::invalid_argument("base_oracle: realized group has another presentation");
    FiniteGroup copy = *realized;
    return IdentityOracle([copy](const Word& w) { return copy.element_of(w) == FiniteGroup::identity(); });
  }
  const std::size_t n = g.generator_count();
  if (g.relators().empty()) return IdentityOracle([](const Word& w) { return w.empty(); });
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& r : g.relators()) {
    bool matched = false;
    for (std::uint32_t i = 0; i < n && !matched; ++i) {
      for (std::uint32_t j = 0; j < n && !matched; ++j) {
        if (i != j && r == commutator(Word::generator(i), Word::generator(j))) {
          pairs.emplace(std::min(i, j), std::max(i, j));
          matched = true;
        }
      }
    }
    if (!matched) return std::nullopt;
  }
  if (pairs.size() != n * (n - 1) / 2) return std::nullopt;
  return IdentityOracle([n](const Word& w) {
    const auto sums = exponent_sums(w, n);
    return std::all_of(sums.begin(), sums.end(), [](std::int64_t s) { return s == 0; });
  });
}

IdentityOracle direct_power_oracle(IdentityOracle base, std::size_t base_generators, std::size_t k) {
  return [base = std::move(base), base_generators, k](const Word& w) {
    for (std::size_t copy = 0; copy < k; ++copy) {
      const std::size_t lo = copy * base_generators;
      std::vector<Letter> projected;
      for (const Letter l : w.letters()) {
        if (l.gen >= lo && l.gen < lo + base_generators) projected.push_back({static_cast<std::uint32_t>(l.gen - lo), l.inverse});
      }
      if (!base(Word(std::move(projected)))) return false;
    }
    return true;
  };
}

MapVerification verify_maps(const DoubleData& d, const IdentityOracle& base) {
  const std::size_t n = d.base_generators();
  const IdentityOracle cube = direct_power_oracle(base, n, 3);
  const IdentityOracle pair = direct_power_oracle(base, n, 2);
  MapVerification v;
  v.rho = d.rho.respects_relators(cube);
  v.mu_rho = d.mu_rho.respects_relators(base);
  v.omega_rho = d.omega_rho.respects_relators(pair);
  const auto& xrels = d.presentation.relators();
  auto lands_on_relators = [&](const GeneratorMap& m) {
    return std::all_of(d.base.relators().begin(), d.base.relators().end(),
                       [&](const Word& r) { return std::find(xrels.begin(), xrels.end(), m(r)) != xrels.end(); });
  };
  v.iota = lands_on_relators(d.iota);
  v.iota_psi = lands_on_relators(d.iota_psi);
  const GeneratorMap retract = d.mu_rho.after(d.iota);
  const GeneratorMap retract_psi = d.mu_rho.after(d.iota_psi);
  const GeneratorMap left = d.rho.after(d.iota);
  const GeneratorMap right = d.rho.after(d.iota_psi);
  v.retraction = v.diagonals = v.image_commutes = true;
  for (std::uint32_t i = 0; i < n; ++i) {
    const Word gen = Word::generator(i);
    v.retraction = v.retraction && retract.images()[i] == gen && retract_psi.images()[i] == gen;
    v.diagonals = v.diagonals && left.images()[i] == copy_generator(n, 0, i) * copy_generator(n, 1, i) &&
                  right.images()[i] == copy_generator(n, 1, i) * copy_generator(n, 2, i);
    v.image_commutes =
        v.image_commutes && cube(commutator(d.rho(gen), d.rho(Word::generator(d.psi(i)))));
  }
  return v;
}

GeneratorMap induced_double_map(const DoubleData& from, const DoubleData& to, const GeneratorMap& f) {
  if (!(f.source() == from.base) || !(f.target() == to.base)) {
    throw std::invalid_argument("induced_double_map: map does not connect the two bases");
  }
  const std::size_t n = from.base_generators();
  std::vector<Word> images(2 * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    images[i] = to.iota(f.images()[i]);
    images[i + n] = to.iota_psi(f.images()[i]);
  }
  return GeneratorMap(from.presentation, to.presentation, std::move(images));
}

// --- finite analysis --------------------------------------------------------

FiniteHom realize_rho(const DoubleData& d, const FiniteGroup& x, const FiniteGroup& cube) {
  if (!(x.presentation() == d.presentation) || !(cube.presentation() == d.cube)) {
    throw std::invalid_argument("realize_rho: groups are not realized from the double and its cube");
  }
  std::vector<Element> images;
  images.reserve(x.generator_count());
  for (const auto& w : d.rho.images()) images.push_back(cube.element_of(w));
  return FiniteHom(x, cube, std::move(images));
}

namespace {

std::vector<Element> unique_nontrivial(std::vector<Element> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (!v.empty() && v.front() == FiniteGroup::identity()) v.erase(v.begin());
  return v;
}

void require_full(const DoubleData& d) {
  if (d.partial) throw std::invalid_argument("analysis needs a full-schedule double; this one is partial");
}

}  // namespace

SubgroupFamilies subgroup_families(const DoubleData& d, const FiniteGroup& g, const FiniteGroup& x) {
  require_full(d);
  if (!(g.presentation() == d.base)) throw std::invalid_argument("subgroup_families: base group mismatch");
  FiniteGroup cube = realize_presentation(d.cube);
  const FiniteHom rho = realize_rho(d, x, cube);
  const auto& words = g.words();
  std::vector<Element> lg;
  std::vector<Element> dg;
  for (const auto& w : words) lg.push_back(x.element_of(w.inverse() * d.psi(w)));
  for (const auto& wx : words) {
    for (const auto& wy : words) dg.push_back(x.element_of(commutator(wx, d.psi(wy))));
  }
  lg = unique_nontrivial(std::move(lg));
  dg = unique_nontrivial(std::move(dg));
  Subgroup l = subgroup_generated(x, lg);
  Subgroup dsub = subgroup_generated(x, dg);
  KernelImage ki = kernel_and_image(rho);
  const bool w_is_d_cap_l = intersection(dsub, l) == ki.kernel;

  std::vector<Element> both = lg;
  both.insert(both.end(), dg.begin(), dg.end());
  const Subgroup ld = subgroup_generated(x, unique_nontrivial(std::move(both)));
  std::vector<bool> in_image(cube.order(), false);
  for (const Element e : ld.elements()) in_image[rho(e)] = true;
  const auto n = static_cast<std::uint32_t>(d.base_generators());
  bool contained = true;
  for (Element a = 0; a < g.order() && contained; ++a) {
    for (Element b = 0; b < g.order() && contained; ++b) {
      const Word& c = g.word(g.commutator(a, b));
      for (std::uint32_t copy = 0; copy < 3 && contained; ++copy) {
        contained = in_image[cube.element_of(shift(c, copy * n))];
      }
    }
  }
  return {std::move(cube), std::move(l), std::move(dsub), std::move(ki.kernel), std::move(ki.image), w_is_d_cap_l,
          contained};
}

TorsionProfile torsion_probe(const Subgroup& w) {
  TorsionProfile t;
  for (const Element e : w.elements()) ++t.order_counts[w.parent().element_order(e)];
  t.max_order = t.order_counts.rbegin()->first;
  t.has_order_two = t.order_counts.contains(2);
  return t;
}

TorsionProfile torsion_probe(std::span<const Permutation> elements) {
  TorsionProfile t;
  for (const auto& p : elements) ++t.order_counts[p.order()];
  if (!t.order_counts.empty()) t.max_order = t.order_counts.rbegin()->first;
  t.has_order_two = t.order_counts.contains(2);
  return t;
}

// --- identities in G^3 ------------------------------------------------------

IdentityWitness identity_witness(const ComputableGroup& g, const GroupElement& u, const GroupElement& v,
                                 const GroupElement& x, const GroupElement& y) {
  using Triple = std::array<GroupElement, 3>;
  const GroupElement e = g.identity();
  auto mul = [&](const Triple& a, const Triple& b) {
    return Triple{g.multiply(a[0], b[0]), g.multiply(a[1], b[1]), g.multiply(a[2], b[2])};
  };
  auto inv = [&](const Triple& a) { return Triple{g.inverse(a[0]), g.inverse(a[1]), g.inverse(a[2])}; };
  auto rho = [&](const GroupElement& h) { return Triple{h, h, e}; };
  auto rho_psi = [&](const GroupElement& h) { return Triple{e, h, h}; };

  const GroupElement uv = g.multiply(u, v);
  Triple rhs = mul(rho(g.inverse(u)), rho_psi(u));
  rhs = mul(rhs, mul(rho(g.inverse(v)), rho_psi(v)));
  rhs = mul(rhs, mul(rho(uv), rho_psi(g.inverse(uv))));
  const Triple lhs_first{g.commutator(u, v), e, e};

  const Triple a = rho(x);
  const Triple b = rho_psi(y);
  const Triple comm = mul(mul(inv(a), inv(b)), mul(a, b));
  const Triple rhs_second{e, g.commutator(x, y), e};
  return {rhs == lhs_first, comm == rhs_second};
}

IdentitySuiteResult identity_suite(const ComputableGroup& g, std::size_t samples, std::uint64_t seed,
                                   std::size_t max_length) {
  std::mt19937_64 rng(seed);
  IdentitySuiteResult r;
  for (std::size_t i = 0; i < samples; ++i) {
    const GroupElement u = g.random_element(rng, max_length);
    const GroupElement v = g.random_element(rng, max_length);
    const GroupElement x = g.random_element(rng, max_length);
    const GroupElement y = g.random_element(rng, max_length);
    const IdentityWitness w = identity_witness(g, u, v, x, y);
    ++r.samples;
    if (!w.first) ++r.first_failures;
    if (!w.second) ++r.second_failures;
  }
  return r;
}

// --- stem audits ------------------------------------------------------------

std::uint64_t rho_image_order(const FiniteGroup& g) {
  const std::uint64_t n = g.order();
  std::vector<std::array<Element, 3>> gens;
  for (std::uint32_t i = 0; i < g.generator_count(); ++i) {
    const Element s = g.generator(i);
    gens.push_back({s, s, 0});
    gens.push_back({0, s, s});
  }
  auto pack = [n](const std::array<Element, 3>& t) { return (t[0] * n + t[1]) * n + t[2]; };
  std::vector<bool> seen(n * n * n, false);
  std::vector<std::array<Element, 3>> queue{{0, 0, 0}};
  seen[0] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto t = queue[qi];
    for (const auto& s : gens) {
      const std::array<Element, 3> u{g.multiply(t[0], s[0]), g.multiply(t[1], s[1]), g.multiply(t[2], s[2])};
      const std::uint64_t key = pack(u);
      if (!seen[key]) {
        seen[key] = true;
        queue.push_back(u);
      }
    }
  }
  return queue.size();
}

namespace {

void require_perfect(const DoubleData& d) {
  if (!is_perfect(d.base)) throw HypothesisViolated("stem audit: the base group is not perfect");
}

}  // namespace

StemAudit stem_audit(const DoubleData& d, const FiniteGroup& g, const FiniteGroup& x) {
  require_full(d);
  require_perfect(d);
  const FiniteGroup cube = realize_presentation(d.cube);
  const KernelImage ki = kernel_and_image(realize_rho(d, x, cube));
  StemAudit a;
  a.base_order = g.order();
  a.x_order = x.order();
  a.image_order = ki.image.order();
  a.w_order = ki.kernel.order();
  a.rho_surjective = a.image_order == cube.order();
  a.w_central = is_central(ki.kernel);
  const Subgroup derived = derived_subgroup(x);
  a.w_in_derived = std::all_of(ki.kernel.elements().begin(), ki.kernel.elements().end(),
                               [&](Element e) { return derived.contains(e); });
  a.x_perfect = is_perfect(d.presentation);
  if (a.x_perfect != (derived.order() == x.order())) {
    throw std::logic_error("stem audit: abelianization and derived subgroup disagree on perfectness");
  }
  a.verdicts_consistent = a.w_central == a.w_in_derived && a.w_in_derived == a.x_perfect;
  a.torsion = torsion_probe(ki.kernel);
  return a;
}

CosetLevelW coset_level_w(const DoubleData& d, const FiniteGroup& g, const EnumerationLimits& limits,
                          EnumerationStats* stats) {
  require_full(d);
  if (!(g.presentation() == d.base)) throw std::invalid_argument("coset_level_w: base group mismatch");
  const std::size_t n = d.base_generators();
  std::vector<Word> h;
  for (std::uint32_t i = 0; i < n; ++i) h.push_back(Word::generator(d.psi(i)));
  const CosetTable t = enumerate(d.presentation, h, limits, stats);

  CosetLevelW r;
  r.index = t.cosets();
  r.x_order = r.index * g.order();
  const auto reps = permutation_rep(t);
  r.generators = reps;

  // Kernel of the action lies in iota_psi(G), which rho embeds; check it meets G^psi trivially.
  std::vector<Permutation> plain(g.order());
  std::vector<Permutation> psi(g.order());
  for (Element e = 0; e < g.order(); ++e) {
    plain[e] = word_image(t, g.word(e));
    psi[e] = word_image(t, d.psi(g.word(e)));
  }
  r.faithful = std::none_of(psi.begin() + 1, psi.end(), [](const Permutation& p) { return p.is_identity(); });

  r.image_order = rho_image_order(g);
  if (r.x_order % r.image_order != 0) throw std::logic_error("coset_level_w: |rho(X)| does not divide |X|");
  r.w_order = r.x_order / r.image_order;

  // D as pairs (permutation, middle coordinate of rho); rho(D) lies in 1 x G' x 1.
  std::map<Permutation, Element> members{{Permutation::identity(r.index), FiniteGroup::identity()}};
  std::vector<std::pair<Permutation, Element>> gens;
  auto close = [&] {
    std::vector<std::pair<Permutation, Element>> queue(members.begin(), members.end());
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (const auto& [gp, ge] : gens) {
        Permutation p = queue[qi].first * gp;
        const Element m = g.multiply(queue[qi].second, ge);
        auto [it, inserted] = members.try_emplace(p, m);
        if (inserted) {
          queue.emplace_back(std::move(p), m);
        } else if (it->second != m) {
          throw std::logic_error("coset_level_w: rho is not well defined on D");
        }
      }
    }
  };
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) {
      const Permutation c = plain[a].inverse() * psi[b].inverse() * plain[a] * psi[b];
      const Element m = g.commutator(a, b);
      const auto it = members.find(c);
      if (it != members.end()) {
        if (it->second != m) throw std::logic_error("coset_level_w: rho is not well defined on D");
        continue;
      }
      gens.emplace_back(c, m);
      close();
    }
  }
  r.d_order = members.size();
  std::vector<Permutation> kernel;
  for (const auto& [p, m] : members) {
    if (m == FiniteGroup::identity()) kernel.push_back(p);
  }
  r.w_in_d = r.faithful && kernel.size() == r.w_order;
  if (r.w_in_d) {
    r.w = std::move(kernel);
    r.w_central = std::all_of(r.w.begin(), r.w.end(), [&](const Permutation& w) {
      return std::all_of(reps.begin(), reps.end(), [&](const Permutation& s) { return w * s == s * w; });
    });
  }
  return r;
}

StemAudit stem_audit(const DoubleData& d, const FiniteGroup& g, const EnumerationLimits& limits) {
  require_full(d);
  require_perfect(d);
  const CosetLevelW c = coset_level_w(d, g, limits);
  if (!c.faithful) throw std::runtime_error("stem audit: X does not act faithfully on the cosets of iota_psi(G)");
  StemAudit a;
  a.base_order = g.order();
  a.index = c.index;
  a.x_order = c.x_order;
  a.image_order = c.image_order;
  a.w_order = c.w_order;
  const std::uint64_t n = g.order();
  a.rho_surjective = c.image_order == n * n * n;
  // D is generated by commutators, so W <= D gives W <= [X,X].
  a.w_in_derived = c.w_in_d;
  a.w_central = c.w_central;
  a.x_perfect = is_perfect(d.presentation);
  a.verdicts_consistent = a.w_central == a.w_in_derived && a.w_in_derived == a.x_perfect;
  a.torsion = torsion_probe(c.w);
  return a;
}

}  // namespace weakcomm
