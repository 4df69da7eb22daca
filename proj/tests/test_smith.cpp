#include <algorithm>
#include <random>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "weakcomm/smith.hpp"

using namespace weakcomm;

namespace {

std::vector<mpz_class> z(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

IntegerMatrix to_matrix(const oracle::Matrix& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  IntegerMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = a[r][c];
  }
  return m;
}

oracle::Matrix random_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  std::uniform_int_distribution<long> entry(-6, 6);
  const std::size_t rows = dim(rng);
  const std::size_t cols = dim(rng);
  oracle::Matrix a(rows, std::vector<long>(cols));
  for (auto& row : a) {
    for (auto& x : row) x = entry(rng);
  }
  return a;
}

}  // namespace

TEST_CASE("small Smith forms") {
  SmithForm s = smith_normal_form(IntegerMatrix(2, 2, {2, 0, 0, 3}));
  CHECK(s.factors == z({1, 6}));
  CHECK(s.free_rank == 0);

  s = smith_normal_form(IntegerMatrix(2, 2, {0, 0, 0, 0}));
  CHECK(s.factors.empty());
  CHECK(s.free_rank == 2);

  s = smith_normal_form(IntegerMatrix(3, 2, {2, 0, 0, 3, 5, 5}));
  CHECK(s.factors == z({1, 1}));
  CHECK(s.free_rank == 0);
}

TEST_CASE("abelianization and perfectness") {
  const SmithForm klein = abelianization(parse_presentation("< a, b | a^2, b^2, [a,b] >"));
  CHECK(klein.factors == z({2, 2}));
  CHECK(klein.free_rank == 0);
  CHECK_FALSE(is_perfect(parse_presentation("< a, b | a^2, b^2, [a,b] >")));
  CHECK(describe_abelian(klein) == "Z/2 x Z/2");

  const SmithForm a5 = abelianization(parse_presentation("< a, b | a^2, b^3, (a*b)^5 >"));
  CHECK(a5.factors == z({1, 1}));
  CHECK(a5.free_rank == 0);
  CHECK(is_perfect(parse_presentation("< a, b | a^2, b^3, (a*b)^5 >")));
  CHECK(describe_abelian(a5) == "trivial");

  const SmithForm z1 = abelianization(parse_presentation("< a | >"));
  CHECK(z1.free_rank == 1);
  CHECK_FALSE(is_perfect(parse_presentation("< a | >")));
  CHECK(is_perfect(parse_presentation("< | >")));
}

TEST_CASE("Smith form agrees with determinantal divisors on random matrices") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const oracle::Matrix a = random_matrix(rng);
    const SmithForm s = smith_normal_form(to_matrix(a));
    INFO("sample " << i);
    CHECK(s.factors == oracle::invariant_factors(a));
    for (std::size_t k = 0; k + 1 < s.factors.size(); ++k) {
      CHECK(s.factors[k] > 0);
      CHECK(mpz_divisible_p(s.factors[k + 1].get_mpz_t(), s.factors[k].get_mpz_t()) != 0);
    }
    CHECK(s.rank() + s.free_rank == a[0].size());
  }
}

TEST_CASE("Smith form is invariant under row and column permutations") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 200; ++i) {
    oracle::Matrix a = random_matrix(rng);
    const SmithForm s = smith_normal_form(to_matrix(a));
    std::shuffle(a.begin(), a.end(), rng);
    std::vector<std::size_t> order(a[0].size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    oracle::Matrix b = a;
    for (std::size_t r = 0; r < a.size(); ++r) {
      for (std::size_t c = 0; c < order.size(); ++c) b[r][c] = a[r][order[c]];
    }
    const SmithForm t = smith_normal_form(to_matrix(b));
    CHECK(t.factors == s.factors);
    CHECK(t.free_rank == s.free_rank);
  }
}

TEST_CASE("entries beyond machine integers") {
  IntegerMatrix m(2, 2);
  m(0, 0) = mpz_class("123456789012345678901234567890");
  m(1, 1) = mpz_class("987654321098765432109876543210");
  const SmithForm s = smith_normal_form(m);
  REQUIRE(s.factors.size() == 2);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), m(0, 0).get_mpz_t(), m(1, 1).get_mpz_t());
  CHECK(s.factors[0] == g);
  CHECK(s.factors[0] * s.factors[1] == m(0, 0) * m(1, 1));
}
