#include <map>
#include <random>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "weakcomm/group_ring.hpp"
#include "weakcomm/scenarios.hpp"
#include "weakcomm/sidki.hpp"

using namespace weakcomm;

namespace {

Rational q(long p, unsigned long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

RingMatrix one_by_one(const RingElement& x) { return RingMatrix(1, {x}); }

/// Affine image of a BS(1,n) element, read off its word: a = x + 1, t = n x.
oracle::Affine affine_of(const BaumslagSolitarCarrier& bs, const GroupElement& g) {
  const long n = bs.n();
  const oracle::Affine a{0, 1};
  const oracle::Affine t{1, 0};
  oracle::Affine r{0, 0};
  const Word w = bs.to_word(g);
  for (const Letter l : w.letters()) {
    const oracle::Affine step = l.gen == 0 ? a : t;
    r = oracle::affine_mul(n, r, l.inverse ? oracle::affine_inv(n, step) : step);
  }
  return r;
}

std::vector<int> signed_word(const GroupElement& g) {
  std::vector<int> out;
  const Word w = FreeCarrier::decode(g);
  for (const Letter l : w.letters()) {
    out.push_back(l.inverse ? -static_cast<int>(l.gen + 1) : static_cast<int>(l.gen + 1));
  }
  return out;
}

}  // namespace

TEST_CASE("ring arithmetic examples") {
  const CarrierPtr z = make_free_abelian(1);
  const RingElement g(z, z->generator(0));
  const RingElement one = RingElement::one(z);
  CHECK((one + g) * (one - g) == one - RingElement(z, z->power(z->generator(0), 2)));
  CHECK(g.scaled(0).is_zero());
  CHECK(g.scaled(0).support_size() == 0);

  const CarrierPtr c2 = make_cyclic(2);
  const RingElement p = RingElement(c2, q(1, 2)) + RingElement(c2, c2->generator(0), q(1, 2));
  CHECK(p * p == p);
  CHECK(p.to_string() == "1/2*e + 1/2*a");
  CHECK((-p).to_string() == "-1/2*e - 1/2*a");
  CHECK(RingElement::zero(c2).to_string() == "0");
}

TEST_CASE("parsing ring element literals") {
  const CarrierPtr c2 = make_cyclic(2);
  const RingElement p = parse_ring_element(c2, "1/2*e + 1/2*a");
  CHECK(p == torsion_idempotent(c2, c2->generator(0), 2));
  CHECK(parse_ring_element(c2, p.to_string()) == p);

  const CarrierPtr f2 = make_free_group(2);
  const RingElement x = parse_ring_element(f2, "a*b^-1 - 3*b + 2/4*[a,b] + 1");
  CHECK(x.coefficient(f2->from_word(Word::generator(0) * Word::generator(1).inverse())) == 1);
  CHECK(x.coefficient(f2->generator(1)) == -3);
  CHECK(x.coefficient(f2->commutator(f2->generator(0), f2->generator(1))) == q(1, 2));
  CHECK(kappa(x) == 1);
  CHECK(parse_ring_element(f2, x.to_string()) == x);
  CHECK(parse_ring_element(f2, "a^-2 + a^2") == RingElement(f2, f2->power(f2->generator(0), -2)) +
                                                     RingElement(f2, f2->power(f2->generator(0), 2)));

  CHECK_THROWS_AS(parse_ring_element(c2, ""), std::invalid_argument);
  CHECK_THROWS_AS(parse_ring_element(c2, "1/0*a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_ring_element(c2, "2 a"), std::invalid_argument);
  CHECK_THROWS(parse_ring_element(c2, "c"));
}

TEST_CASE("mixing groups is an error") {
  const CarrierPtr c2 = make_cyclic(2);
  const CarrierPtr other = make_cyclic(2);
  CHECK_THROWS_AS(RingElement::one(c2) + RingElement::one(other), GroupMismatch);
  CHECK_THROWS_AS(RingElement::one(c2) * RingElement::one(other), GroupMismatch);
}

TEST_CASE("kappa and epsilon") {
  const CarrierPtr z = make_free_abelian(1);
  const RingElement x = parse_ring_element(z, "2 + 3*a");
  CHECK(kappa(x) == 2);
  CHECK(epsilon(x) == 5);
  CHECK(kappa(RingMatrix::identity(z, 4)) == 4);
  CHECK(epsilon(RingElement::zero(z)) == 0);
  const CarrierPtr c2 = make_cyclic(2);
  const RingElement p = torsion_idempotent(c2, c2->generator(0), 2);
  CHECK(kappa(p) == q(1, 2));
  CHECK(epsilon(p) == 1);
}

TEST_CASE("idempotency") {
  const CarrierPtr c2 = make_cyclic(2);
  CHECK(is_idempotent(RingMatrix(c2, 3)));
  CHECK(is_idempotent(RingMatrix::identity(c2, 3)));
  const RingElement p = torsion_idempotent(c2, c2->generator(0), 2);
  CHECK(is_idempotent(RingMatrix::diagonal({p, RingElement::zero(c2)})));
  CHECK_FALSE(is_idempotent(one_by_one(RingElement(c2, c2->generator(0)))));
}

TEST_CASE("torsion idempotents") {
  const CarrierPtr c1 = make_cyclic(1);
  CHECK(torsion_idempotent(c1, c1->identity(), 1) == RingElement::one(c1));
  for (std::size_t n : {2, 3, 4, 6}) {
    const CarrierPtr c = make_cyclic(n);
    const RingElement p = torsion_idempotent(c, c->generator(0), n);
    CHECK(is_idempotent(p));
    CHECK(kappa(p) == q(1, n));
    CHECK(epsilon(p) == 1);
  }
  const CarrierPtr c4 = make_cyclic(4);
  CHECK_THROWS_AS(torsion_idempotent(c4, c4->generator(0), 2), std::invalid_argument);
  CHECK_THROWS_AS(torsion_idempotent(c4, c4->generator(0), 8), std::invalid_argument);
  CHECK_THROWS_AS(torsion_idempotent(make_free_group(1), make_free_group(1)->generator(0), 3), std::invalid_argument);
}

TEST_CASE("Hattori-Stallings traces") {
  const CarrierPtr f2 = make_free_group(2);
  const ClassFunction id = hattori_stallings(RingMatrix::identity(f2, 2));
  CHECK(id.at(f2->identity()) == 2);
  CHECK(id.values.size() == 1);

  const CarrierPtr c3 = make_cyclic(3);
  const ClassFunction p = hattori_stallings(one_by_one(torsion_idempotent(c3, c3->generator(0), 3)));
  CHECK(p.values.size() == 3);
  for (const auto& [k, v] : p.values) CHECK(v == q(1, 3));

  const CarrierPtr z2 = make_free_abelian(2);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const InvertiblePair u = random_invertible(z2, 2, rng, 4);
    CHECK(u.u * u.u_inverse == RingMatrix::identity(z2, 2));
    const RingMatrix a = u.u * RingMatrix::diagonal({RingElement::one(z2), RingElement::zero(z2)}) * u.u_inverse;
    const ClassFunction hs = hattori_stallings(a);
    CHECK(hs.at(z2->identity()) == 1);
    CHECK(hs.values.size() == 1);
  }

  CHECK_THROWS_AS(hattori_stallings(RingMatrix::identity(make_baumslag_solitar(2), 1)), CapabilityError);
}

TEST_CASE("free-group conjugacy representatives are class invariants") {
  const CarrierPtr f2 = make_free_group(2);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 500; ++i) {
    const GroupElement x = f2->random_element(rng, 8);
    const GroupElement y = f2->random_element(rng, 8);
    const GroupElement conj = f2->multiply(f2->multiply(f2->inverse(y), x), y);
    CHECK(f2->conjugacy_representative(conj) == f2->conjugacy_representative(x));
    CHECK(f2->conjugacy_representative(f2->conjugacy_representative(x)) == f2->conjugacy_representative(x));
  }
  // a and b are not conjugate, nor are a and a^-1.
  const GroupElement a = f2->generator(0);
  CHECK(f2->conjugacy_representative(a) != f2->conjugacy_representative(f2->generator(1)));
  CHECK(f2->conjugacy_representative(a) != f2->conjugacy_representative(f2->inverse(a)));
}

TEST_CASE("BS(1,n) normal forms agree with the affine representation") {
  for (long n : {2L, 3L}) {
    const auto bs = std::make_shared<const BaumslagSolitarCarrier>(n);
    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    std::vector<GroupElement> seen;
    for (int i = 0; i < 400; ++i) {
      const GroupElement x = bs->random_element(rng, 8);
      const GroupElement y = bs->random_element(rng, 8);
      CHECK(affine_of(*bs, bs->multiply(x, y)) == oracle::affine_mul(n, affine_of(*bs, x), affine_of(*bs, y)));
      CHECK(affine_of(*bs, bs->inverse(x)) == oracle::affine_inv(n, affine_of(*bs, x)));
      // Canonical forms are faithful: equal affine maps iff equal keys.
      CHECK((affine_of(*bs, x) == affine_of(*bs, y)) == (x == y));
      CHECK(bs->from_word(bs->to_word(x)) == x);
    }
    const GroupElement a = bs->generator(0);
    const GroupElement t = bs->generator(1);
    CHECK(bs->multiply(bs->multiply(t, a), bs->inverse(t)) == bs->power(a, n));
  }
}

TEST_CASE("convolution agrees with brute force on F2 and BS(1,2)") {
  std::mt19937_64 rng(8);
  const CarrierPtr f2 = make_free_group(2);
  for (int i = 0; i < 100; ++i) {
    const RingElement x = random_ring_element(f2, rng, 4, 4);
    const RingElement y = random_ring_element(f2, rng, 4, 4);
    std::map<std::vector<int>, Rational> expected;
    for (const auto& [g, a] : x.terms()) {
      for (const auto& [h, b] : y.terms()) {
        std::vector<int> w = signed_word(g);
        const std::vector<int> v = signed_word(h);
        w.insert(w.end(), v.begin(), v.end());
        expected[oracle::reduce(w)] += a * b;
      }
    }
    std::erase_if(expected, [](const auto& kv) { return sgn(kv.second) == 0; });
    std::map<std::vector<int>, Rational> actual;
    const RingElement xy = x * y;
    for (const auto& [g, c] : xy.terms()) actual[signed_word(g)] = c;
    CHECK(actual == expected);
  }

  const auto bs = std::make_shared<const BaumslagSolitarCarrier>(2);
  const CarrierPtr bsp = bs;
  for (int i = 0; i < 100; ++i) {
    const RingElement x = random_ring_element(bsp, rng, 4, 4);
    const RingElement y = random_ring_element(bsp, rng, 4, 4);
    std::map<std::pair<long, std::string>, Rational> expected;
    for (const auto& [g, a] : x.terms()) {
      for (const auto& [h, b] : y.terms()) {
        const oracle::Affine f = oracle::affine_mul(2, affine_of(*bs, g), affine_of(*bs, h));
        expected[{f.k, f.b.get_str()}] += a * b;
      }
    }
    std::erase_if(expected, [](const auto& kv) { return sgn(kv.second) == 0; });
    std::map<std::pair<long, std::string>, Rational> actual;
    const RingElement xy = x * y;
    for (const auto& [g, c] : xy.terms()) {
      const oracle::Affine f = affine_of(*bs, g);
      actual[{f.k, f.b.get_str()}] = c;
    }
    CHECK(actual == expected);
    CHECK(kappa(x * y) == kappa(y * x));
  }
}

TEST_CASE("pushforward") {
  const CarrierPtr c2 = make_cyclic(2);
  const RingElement p = torsion_idempotent(c2, c2->generator(0), 2);
  const RingMatrix a = RingMatrix::diagonal({p, RingElement::zero(c2)});
  CHECK(pushforward(a, CarrierHom::identity(c2)) == a);

  const CarrierPtr c1 = make_cyclic(1);
  const CarrierHom kill = CarrierHom::from_generator_images(c2, c1, {c1->identity()});
  const RingMatrix g = one_by_one(RingElement(c2, c2->generator(0), 3));
  CHECK(pushforward(g, kill) == one_by_one(RingElement(c1, Rational(3))));
  CHECK(pushforward(one_by_one(p), kill) == RingMatrix::identity(c1, 1));

  // rho-pushforward of a torsion idempotent of X(C2).
  const FiniteGroup base = realize_presentation(parse_presentation("< a | a^2 >"));
  const DoubleData d = full_double(base);
  const FiniteGroup x = realize_presentation(d.presentation);
  const FiniteGroup cube = realize_presentation(d.cube);
  const CarrierPtr xc = make_finite_carrier(x, "X(C2)");
  const CarrierPtr cc = make_finite_carrier(cube, "C2^3");
  const CarrierHom rho = CarrierHom::from_finite(realize_rho(d, x, cube), xc, cc);
  const GroupElement aa = xc->from_word(Word::generator(0) * Word::generator(1));
  const RingMatrix e = one_by_one(torsion_idempotent(xc, aa, 2));
  const RingMatrix pushed = pushforward(e, rho);
  CHECK(is_idempotent(pushed));
  CHECK(trace_audit(pushed).delta == q(1, 2));
}

TEST_CASE("pushforward is multiplicative") {
  const CarrierPtr c6 = make_cyclic(6);
  const CarrierPtr c3 = make_cyclic(3);
  const CarrierHom h = CarrierHom::from_generator_images(c6, c3, {c3->generator(0)});
  const CarrierPtr f2 = make_free_group(2);
  const CarrierPtr z2 = make_free_abelian(2);
  const CarrierHom ab = CarrierHom::from_generator_images(f2, z2, {z2->generator(0), z2->generator(1)});
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const RingMatrix a = random_invertible(c6, 2, rng, 2).u;
    const RingMatrix b = random_invertible(c6, 2, rng, 2).u;
    CHECK(pushforward(a * b, h) == pushforward(a, h) * pushforward(b, h));
    const RingMatrix u = random_invertible(f2, 2, rng, 2).u;
    const RingMatrix v = random_invertible(f2, 2, rng, 2).u;
    CHECK(pushforward(u * v, ab) == pushforward(u, ab) * pushforward(v, ab));
  }
}

TEST_CASE("trace audits") {
  const CarrierPtr z2 = make_free_abelian(2);
  const TraceReport id = trace_audit(RingMatrix::identity(z2, 3));
  CHECK(id.kappa == 3);
  CHECK(id.epsilon == 3);
  CHECK(id.delta == 0);
  CHECK(id.weak_bass);
  CHECK(id.constraints_hold());
  CHECK_FALSE(id.kaplansky_dichotomy);

  const CarrierPtr c2 = make_cyclic(2);
  const TraceReport p = trace_audit(one_by_one(torsion_idempotent(c2, c2->generator(0), 2)));
  CHECK(p.kappa == q(1, 2));
  CHECK(p.epsilon == 1);
  CHECK(p.delta == q(1, 2));
  CHECK_FALSE(p.weak_bass);
  REQUIRE(p.kaplansky_dichotomy);
  CHECK(*p.kaplansky_dichotomy);
  CHECK(p.constraints_hold());

  CHECK_THROWS_AS(trace_audit(one_by_one(RingElement(c2, c2->generator(0)))), std::invalid_argument);

  const CarrierPtr f2 = make_free_group(2);
  std::mt19937_64 rng(10);
  for (std::size_t n = 1; n <= 3; ++n) {
    const RingMatrix a = conjugated_diagonal_idempotent(f2, n, rng, 3);
    const TraceReport r = trace_audit(a);
    CHECK(r.delta == 0);
    CHECK(r.constraints_hold());
    REQUIRE(r.hattori_stallings);
    CHECK(r.hattori_stallings->values.size() <= 1);
  }

  const CarrierPtr bs = make_baumslag_solitar(2);
  const TraceReport b = trace_audit(conjugated_diagonal_idempotent(bs, 2, rng, 3));
  CHECK_FALSE(b.hattori_stallings);
  CHECK(b.delta == 0);
  CHECK(b.constraints_hold());
}

TEST_CASE("trace property and epsilon homomorphism on random pairs") {
  for (const CarrierPtr& g : {make_cyclic(6), make_free_abelian(2), make_free_group(2), make_baumslag_solitar(2)}) {
    INFO(g->name());
    const TracePropertyResult r = trace_property_suite(g, 200, 11);
    CHECK(r.pairs == 200);
    CHECK(r.passed());
  }
}

TEST_CASE("Hattori-Stallings is invariant under conjugation") {
  std::mt19937_64 rng(12);
  const CarrierPtr c6 = make_cyclic(6);
  const RingElement p3 = torsion_idempotent(c6, c6->power(c6->generator(0), 2), 3);
  for (const CarrierPtr& g : {make_free_group(2), make_free_abelian(2), c6}) {
    INFO(g->name());
    for (int i = 0; i < 10; ++i) {
      const RingMatrix a = g == c6 ? RingMatrix::diagonal({p3, RingElement::one(c6)})
                                   : RingMatrix::diagonal({RingElement::one(g), RingElement::zero(g)});
      const InvertiblePair u = random_invertible(g, 2, rng, 3);
      const RingMatrix b = u.u * a * u.u_inverse;
      CHECK(is_idempotent(b));
      CHECK(hattori_stallings(b).values == hattori_stallings(a).values);
    }
  }
}

TEST_CASE("the idempotent corpus") {
  const auto corpus = idempotent_corpus(7);
  REQUIRE(corpus.size() > 20);
  std::size_t torsion = 0;
  for (const auto& entry : corpus) {
    INFO(entry.label);
    REQUIRE(is_idempotent(entry.matrix));
    const TraceReport r = trace_audit(entry.matrix);
    CHECK(r.constraints_hold());
    if (entry.expected_delta) CHECK(r.delta == *entry.expected_delta);
    if (r.hattori_stallings) {
      CHECK(r.hattori_stallings->at(entry.matrix.group()->identity()) == r.kappa);
      CHECK(r.hattori_stallings->total() == r.epsilon);
      if (entry.conjugated_from) CHECK(r.hattori_stallings->values == hattori_stallings(*entry.conjugated_from).values);
    }
    if (entry.expected_delta && sgn(*entry.expected_delta) != 0) ++torsion;
  }
  CHECK(torsion >= 4);
  // Same seed, same corpus.
  const auto again = idempotent_corpus(7);
  REQUIRE(again.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) CHECK(again[i].matrix.to_string() == corpus[i].matrix.to_string());
}
