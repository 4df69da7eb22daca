#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "weakcomm/finite_group.hpp"
#include "weakcomm/presentation.hpp"

using namespace weakcomm;

namespace {

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Word random_word(std::mt19937_64& rng, std::uint32_t gens, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::uint32_t> col(0, 2 * gens - 1);
  std::vector<Letter> letters(len(rng));
  for (auto& l : letters) l = Letter::from_column(col(rng));
  return Word(std::move(letters));
}

}  // namespace

TEST_CASE("parse small presentations") {
  const Presentation c2 = parse_presentation("< a | a^2 >");
  REQUIRE(c2.generator_count() == 1);
  REQUIRE(c2.relators().size() == 1);
  CHECK(c2.relators()[0] == Word::generator(0).pow(2));

  const Presentation a5 = parse_presentation("< a, b | a^2, b^3, (a*b)^5 >");
  REQUIRE(a5.generator_count() == 2);
  REQUIRE(a5.relators().size() == 3);
  CHECK(a5.relators()[0].length() == 2);
  CHECK(a5.relators()[1].length() == 3);
  CHECK(a5.relators()[2].length() == 10);
  CHECK(a5.relators()[2] == (Word::generator(0) * Word::generator(1)).pow(5));
}

TEST_CASE("undeclared generators are reported with a position") {
  try {
    (void)parse_presentation("< a | b^2 >");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);
    CHECK(std::string(e.what()).find("b") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_presentation("< a, a | >"), ParseError);
  CHECK_THROWS_AS(parse_presentation("< a | a^ >"), ParseError);
  CHECK_THROWS_AS(parse_presentation("< a | a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("< 1a | >"), ParseError);
}

TEST_CASE("grammar: commutators, negative exponents, comments, whitespace") {
  const Presentation p = parse_presentation("# Klein four\n<a,b|\n  a^2, b^-2, # trailing comment\n [a,b]>");
  REQUIRE(p.relators().size() == 3);
  CHECK(p.relators()[1] == Word::generator(1).pow(-2));
  CHECK(p.relators()[2] == commutator(Word::generator(0), Word::generator(1)));
  const Presentation q = parse_presentation("< x, y, z | [x, y, z], (x*y)^(-2) >");
  CHECK(q.relators()[0] == commutator(commutator(Word::generator(0), Word::generator(1)), Word::generator(2)));
  CHECK(q.relators()[1] == (Word::generator(0) * Word::generator(1)).pow(-2));
}

TEST_CASE("relators are reduced, nonempty and deduplicated") {
  const Presentation p = parse_presentation("< a, b | a*a^-1, a^2, a*a, b*a*a^-1*b >");
  REQUIRE(p.relators().size() == 2);
  CHECK(p.relators()[0] == Word::generator(0).pow(2));
  CHECK(p.relators()[1] == Word::generator(1).pow(2));
  CHECK_THROWS_AS(Presentation({"a"}, {Word::generator(1)}), std::invalid_argument);
}

TEST_CASE("printer is canonical and round-trips") {
  const Presentation p = parse_presentation("<a,b|a^2,b^3,(a*b)^5>");
  CHECK(p.to_string() == "< a, b | a^2, b^3, (a*b)^5 >");
  CHECK(p.format_word(Word{}) == "1");
  CHECK(parse_presentation("< | >").to_string() == "< | >");
  std::vector<std::string> corpus = {"< a | a^2 >", "< a, b | >", "< x | x^-7 >", "< a, b | [a,b], a^3*b^-2*a >",
                                     "< s, t | s^2, t^2, (s*t)^3, s*t*s^-1*t^-1*s >"};
  for (const auto& entry : std::filesystem::directory_iterator(WEAKCOMM_DATA_DIR)) {
    if (entry.path().extension() == ".grp") corpus.push_back(read(entry.path()));
  }
  for (const auto& text : corpus) {
    INFO(text);
    const Presentation p1 = parse_presentation(text);
    const Presentation p2 = parse_presentation(p1.to_string());
    CHECK(p1 == p2);
    CHECK(p2.to_string() == p1.to_string());
  }
}

TEST_CASE("free product and direct power") {
  const Presentation fp = free_product(parse_presentation("< a | a^2 >"), parse_presentation("< b | b^3 >"));
  CHECK(fp.to_string() == "< a, b | a^2, b^3 >");
  const Presentation clash = free_product(parse_presentation("< a | a^2 >"), parse_presentation("< a | a^3 >"));
  CHECK(clash.generators() == std::vector<std::string>{"a", "a_2"});

  const Presentation c2 = parse_presentation("< a | a^2 >");
  const Presentation cube = direct_power(c2, 3);
  CHECK(cube.generators() == std::vector<std::string>{"a_1", "a_2", "a_3"});
  CHECK(cube.relators().size() == 6);
  CHECK(realize_presentation(cube).order() == 8);

  const Presentation one = direct_power(c2, 1);
  CHECK(one.generators() == std::vector<std::string>{"a_1"});
  CHECK(one.relators() == c2.relators());

  const Presentation s3 = parse_presentation("< a, b | a^2, b^3, (a*b)^2 >");
  CHECK(realize_presentation(direct_power(s3, 2)).order() == 36);
  CHECK(power_generator(2, 1, 1) == 3);
}

TEST_CASE("generator maps are homomorphisms") {
  const Presentation f2({"a", "b"}, {});
  const Presentation c2 = parse_presentation("< a | a^2 >");
  const Presentation cube = direct_power(c2, 3);
  // rho on the generator a of C_2: a -> a_1 a_2.
  const GeneratorMap diag(c2, cube, {Word::generator(0) * Word::generator(1)});
  CHECK(diag(Word::generator(0)) == Word::generator(0) * Word::generator(1));
  CHECK(diag(Word{}).empty());

  const GeneratorMap m(f2, f2, {Word::generator(0) * Word::generator(1), Word::generator(1).pow(-2)});
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    const Word u = random_word(rng, 2, 8);
    const Word v = random_word(rng, 2, 8);
    CHECK(m(u * v) == m(u) * m(v));
    CHECK(m(u.inverse()) == m(u).inverse());
  }
  const GeneratorMap twice = m.after(m);
  CHECK(twice(Word::generator(1)) == m(m(Word::generator(1))));
  CHECK_THROWS_AS(GeneratorMap(f2, f2, {Word::generator(0)}), std::invalid_argument);
}

TEST_CASE("relator verification uses a target word problem") {
  const Presentation c4 = parse_presentation("< a | a^4 >");
  const Presentation c2 = parse_presentation("< b | b^2 >");
  const FiniteGroup target = realize_presentation(c2);
  auto is_e = [&](const Word& w) { return target.element_of(w) == FiniteGroup::identity(); };
  CHECK(GeneratorMap(c4, c2, {Word::generator(0)}).respects_relators(is_e));
  const Presentation c3 = parse_presentation("< a | a^3 >");
  CHECK_FALSE(GeneratorMap(c3, c2, {Word::generator(0)}).respects_relators(is_e));
}

TEST_CASE("digest is stable") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a").size() == 16);
  CHECK(fnv1a_hex("abc") != fnv1a_hex("abd"));
}
