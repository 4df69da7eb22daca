// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "weakcomm/group_ring.hpp"
#include "weakcomm/scenarios.hpp"
#include "weakcomm/sidki.hpp"
#include "weakcomm/smith.hpp"

using namespace weakcomm;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int number, const char* title, double budget_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= budget_seconds) {
    out.ok = false;
    out.detail << " [over budget " << budget_seconds << " s]";
  }
  if (!out.ok) ++failures;
  std::printf("[%s] %d. %s (%.3f s)%s\n", out.ok ? "PASS" : "FAIL", number, title, seconds, out.detail.str().c_str());
  std::fflush(stdout);
}

double elapsed(const std::function<void()>& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
  criterion(1, "A5 enumeration: 60 cosets over 1, 30 over <a>", 2.0, [](Outcome& o) {
    // Ground truth first: a = (1 2)(3 4), b = (1 3 5) satisfy the relators and generate 60 elements.
    const std::vector<oracle::Perm> gens{oracle::from_cycles(5, {{1, 2}, {3, 4}}), oracle::from_cycles(5, {{1, 3, 5}})};
    const auto id = oracle::identity_perm(5);
    o.require(oracle::evaluate(gens, {{0, 2}}) == id, "oracle a^2");
    o.require(oracle::evaluate(gens, {{1, 3}}) == id, "oracle b^3");
    o.require(oracle::perm_order(oracle::compose(gens[0], gens[1])) == 5, "oracle (ab)^5");
    const std::size_t order = oracle::orbit_stabilizer_order(gens);
    const std::size_t a_order = oracle::perm_order(gens[0]);
    o.require(order == 60, "oracle order");

    const Presentation p = parse_presentation(builtin::a5);
    std::size_t trivial = 0;
    std::size_t over_a = 0;
    const double t1 = elapsed([&] { trivial = enumerate(p, {}).cosets(); });
    const double t2 = elapsed([&] { over_a = enumerate(p, {Word::generator(0)}).cosets(); });
    o.require(trivial == order, "index over trivial subgroup");
    o.require(over_a == order / a_order, "index over <a>");
    o.require(t1 < 1.0 && t2 < 1.0, "each enumeration under 1 s");
    o.detail << " index=" << trivial << "," << over_a;
  });

  criterion(2, "X(C2): order 4, abelianization [2,2], W trivial", 1.0, [](Outcome& o) {
    const FiniteGroup g = realize_presentation(parse_presentation(builtin::c2));
    const DoubleData d = full_double(g);
    o.require(d.presentation.to_string() == "< a, a_psi | a^2, a_psi^2, a^-1*a_psi^-1*a*a_psi >", "relators");
    const FiniteGroup x = realize_presentation(d.presentation);
    const SmithForm ab = abelianization(d.presentation);
    const SubgroupFamilies f = subgroup_families(d, g, x);
    o.require(x.order() == 4, "|X| = 4");
    o.require(ab.factors == std::vector<mpz_class>{2, 2} && ab.free_rank == 0, "abelianization [2,2]");
    o.require(f.w.is_trivial(), "W trivial");
    o.detail << " |X|=" << x.order() << " |W|=" << f.w.order();
  });

  criterion(3, "X(C2 x C2): W has an element of order 2", 10.0, [](Outcome& o) {
    const FiniteGroup g = realize_presentation(parse_presentation(builtin::klein));
    const DoubleData d = full_double(g);
    o.require(d.commutator_relators == 3 && !d.partial, "full schedule");
    const FiniteGroup x = realize_presentation(d.presentation);
    const SubgroupFamilies f = subgroup_families(d, g, x);
    const TorsionProfile t = torsion_probe(f.w);
    o.require(f.w.order() >= 2, "|W| >= 2");
    o.require(t.has_order_two, "order-2 element in W");
    o.require(f.w_is_d_cap_l, "W = D n L");
    // Pinned regression values.
    o.require(x.order() == 32, "|X| = 32");
    o.require(f.w.order() == 2, "|W| = 2");
    o.detail << " |X|=" << x.order() << " |W|=" << f.w.order();
  });

  criterion(4, "A5 stem-extension audit at the coset level", 60.0, [](Outcome& o) {
    const FiniteGroup g = realize_presentation(parse_presentation(builtin::a5));
    const DoubleData d = full_double(g);
    const StemAudit a = stem_audit(d, g);
    o.require(a.index.has_value(), "enumeration over iota_psi(A5) completed");
    o.require(a.x_order == a.index.value_or(0) * 60, "|X| = index * 60");
    o.require(a.image_order == 216000, "|im rho| = 216000");
    o.require(a.rho_surjective, "rho surjective");
    o.require(a.w_central, "W central");
    o.require(a.w_in_derived, "W in [X,X]");
    o.require(a.x_perfect, "X perfect");
    o.require(a.verdicts_consistent, "verdicts co-occur");
    o.require(a.w_order % 2 == 0 && a.w_order <= 8, "|W| even and <= 8");
    o.require(a.x_order == a.w_order * a.image_order, "|X| = |W| |im rho|");
    o.require(a.torsion.has_order_two, "W contains order 2");
    for (const auto& [order, count] : a.torsion.order_counts) o.require(8 % order == 0, "orders divide 8");
    o.detail << " index=" << a.index.value_or(0) << " |X|=" << a.x_order << " |W|=" << a.w_order;
  });

  criterion(5, "trivial group: X and W trivial", 1.0, [](Outcome& o) {
    const FiniteGroup g = realize_presentation(parse_presentation(builtin::trivial));
    const DoubleData d = full_double(g);
    const FiniteGroup x = realize_presentation(d.presentation);
    const SubgroupFamilies f = subgroup_families(d, g, x);
    const StemAudit a = stem_audit(d, g, x);
    o.require(x.order() == 1, "X trivial");
    o.require(f.w.is_trivial(), "W trivial");
    o.require(a.all_pass(), "stem audit verdicts");
  });

  criterion(6, "commutator identities in F2 and Z^3, 1000 samples each", 30.0, [](Outcome& o) {
    const IdentitySuiteResult f2 = identity_suite(*make_free_group(2), 1000, 7, 6);
    const IdentitySuiteResult z3 = identity_suite(*make_free_abelian(3), 1000, 7, 6);
    o.require(f2.samples == 1000 && f2.passed(), "F2");
    o.require(z3.samples == 1000 && z3.passed(), "Z^3");
    o.detail << " failures=" << f2.first_failures + f2.second_failures + z3.first_failures + z3.second_failures;
  });

  criterion(7, "trace property on C6, Z^2, F2, BS(1,2); HS consistency on the corpus", 60.0, [](Outcome& o) {
    for (const CarrierPtr& g : {make_cyclic(6), make_free_abelian(2), make_free_group(2), make_baumslag_solitar(2)}) {
      const TracePropertyResult r = trace_property_suite(g, 200, 7);
      o.require(r.pairs == 200 && r.passed(), "trace property on " + g->name());
    }
    std::size_t checked = 0;
    for (const auto& entry : idempotent_corpus(7)) {
      if (!entry.matrix.group()->has_conjugacy()) continue;
      const ClassFunction hs = hattori_stallings(entry.matrix);
      o.require(hs.at(entry.matrix.group()->identity()) == kappa(entry.matrix), "r_A(e) = kappa on " + entry.label);
      o.require(hs.total() == epsilon(entry.matrix), "sum r_A = epsilon on " + entry.label);
      ++checked;
    }
    o.detail << " hsEntries=" << checked;
  });

  criterion(8, "weak Bass: delta 0 on conjugated diagonals, (n-1)/n on torsion", 60.0, [](Outcome& o) {
    std::size_t conjugated = 0;
    for (const auto& entry : idempotent_corpus(7)) {
      const TraceReport r = trace_audit(entry.matrix);
      o.require(r.kappa_nonnegative && r.epsilon_integral_in_range, "Zaleskii on " + entry.label);
      const std::string& name = entry.matrix.group()->name();
      if (entry.label.rfind("conj.", 0) == 0 && (name == "Z^2" || name == "F_2")) {
        o.require(r.delta == 0, "delta 0 on " + entry.label);
        ++conjugated;
      }
    }
    o.require(conjugated == 18, "18 conjugated diagonals over Z^2 and F_2");
    for (const std::size_t n : {2U, 3U, 4U, 6U}) {
      const CarrierPtr c = make_cyclic(n);
      const TraceReport r = trace_audit(RingMatrix::diagonal({torsion_idempotent(c, c->generator(0), n)}));
      Rational expected(static_cast<long>(n - 1), n);
      expected.canonicalize();
      o.require(r.delta == expected, "delta (n-1)/n on C_" + std::to_string(n));
      o.require(r.constraints_hold(), "Zaleskii on C_" + std::to_string(n));
    }
    o.detail << " conjugated=" << conjugated;
  });

  return failures == 0 ? 0 : 1;
}
