#include <set>

#include "catch_amalgamated.hpp"
#include "json.hpp"
#include "weakcomm/scenarios.hpp"

using namespace weakcomm;
using nlohmann::json;

namespace {

ScenarioOptions untimed() {
  ScenarioOptions o;
  o.timing = false;
  return o;
}

void check_schema(const json& j) {
  REQUIRE(j.is_object());
  const std::set<std::string> allowed{"scenario", "inputDigest", "seed", "verdicts", "payload", "runtimeMs"};
  for (const auto& [k, v] : j.items()) CHECK(allowed.contains(k));
  CHECK(j.at("scenario").is_string());
  CHECK(j.at("inputDigest").is_string());
  CHECK(j.at("runtimeMs").is_number_integer());
  if (j.contains("seed")) CHECK(j.at("seed").is_number_unsigned());
  bool inconclusive = false;
  for (const auto& [k, v] : j.at("verdicts").items()) {
    REQUIRE(v.is_string());
    const std::string s = v.get<std::string>();
    CHECK((s == "pass" || s == "fail" || s == "inconclusive"));
    inconclusive = inconclusive || s == "inconclusive";
  }
  for (const auto& [k, v] : j.at("payload").items()) CHECK(v.is_string());
  if (inconclusive) CHECK(j.at("payload").contains("reason"));
}

}  // namespace

TEST_CASE("word lists split on top-level commas only") {
  const Presentation p = parse_presentation("< a, b | >");
  const auto words = parse_word_list(p, "a, [a,b], (a*b)^2");
  REQUIRE(words.size() == 3);
  CHECK(words[1] == commutator(Word::generator(0), Word::generator(1)));
  CHECK(parse_word_list(p, "").empty());
  CHECK(parse_word_list(p, "  ").empty());
}

TEST_CASE("verdict helpers") {
  ScenarioReport r;
  CHECK(r.overall() == Verdict::pass);
  r.verdicts["x"] = Verdict::inconclusive;
  CHECK(r.overall() == Verdict::inconclusive);
  r.verdicts["y"] = Verdict::fail;
  CHECK(r.overall() == Verdict::fail);
  CHECK(exit_code(Verdict::pass) == 0);
  CHECK(exit_code(Verdict::fail) == 1);
  CHECK(exit_code(Verdict::inconclusive) == 3);
  CHECK(to_string(Verdict::inconclusive) == "inconclusive");
}

TEST_CASE("enumerate scenario") {
  const ScenarioReport r = enumerate_scenario(builtin::a5, "a", untimed());
  CHECK(r.overall() == Verdict::pass);
  CHECK(r.payload.at("index") == "30");
  check_schema(json::parse(to_json(r)));

  std::string dump;
  const ScenarioReport full = enumerate_scenario(builtin::a5, "", untimed(), &dump);
  CHECK(full.payload.at("index") == "60");
  CHECK(dump.rfind("# coset table", 0) == 0);

  ScenarioOptions tight = untimed();
  tight.limits.max_cosets = 10;
  const ScenarioReport limited = enumerate_scenario(builtin::a5, "", tight);
  CHECK(limited.overall() == Verdict::inconclusive);
  CHECK(exit_code(limited.overall()) == 3);
  const std::string reason = limited.payload.at("reason");
  CHECK(reason.find("may be infinite or merely large") != std::string::npos);
  // Never claims the index is infinite.
  CHECK(reason.find("index is infinite") == std::string::npos);
  CHECK(reason.find("infinite index") == std::string::npos);
  check_schema(json::parse(to_json(limited)));
  CHECK(limited.input_digest != full.input_digest);
}

TEST_CASE("double and rocco scenarios") {
  const ScenarioReport d = double_scenario(builtin::c2, Schedule::full, untimed());
  CHECK(d.overall() == Verdict::pass);
  CHECK(d.payload.at("relators") == "3");
  CHECK(d.payload.at("commutatorRelators") == "1");
  CHECK(d.payload.at("partial") == "false");

  const ScenarioReport free = double_scenario("< a, b | >", Schedule::generators_only, untimed());
  CHECK(free.payload.at("partial") == "true");
  CHECK(free.payload.at("commutatorRelators") == "2");
  CHECK(free.overall() == Verdict::pass);

  const ScenarioReport v = rocco_scenario(builtin::c2, untimed());
  CHECK(v.payload.at("candidates") == "16");
  CHECK(v.payload.at("order") == "8");
}

TEST_CASE("analyze-w and stem-audit scenarios") {
  const ScenarioReport k = analyze_w_scenario(builtin::klein, untimed());
  CHECK(k.overall() == Verdict::pass);
  CHECK(k.payload.at("wOrder") == "2");
  CHECK(k.payload.at("xOrder") == "32");
  CHECK(k.payload.at("wHasOrderTwo") == "true");

  const ScenarioReport c2 = stem_audit_scenario(builtin::c2, untimed());
  CHECK(c2.verdicts.at("hypothesis") == Verdict::fail);
  CHECK(exit_code(c2.overall()) == 1);

  const ScenarioReport t = stem_audit_scenario(builtin::trivial, untimed());
  CHECK(t.overall() == Verdict::pass);
  CHECK(t.payload.at("wOrder") == "1");
}

TEST_CASE("identities and ring-audit scenarios record their seeds") {
  const ScenarioReport f2 = identities_scenario(IdentityGroup::f2, "", 200, 7, untimed());
  CHECK(f2.overall() == Verdict::pass);
  REQUIRE(f2.seed);
  CHECK(*f2.seed == 7);
  CHECK(json::parse(to_json(f2)).at("seed") == 7);

  const ScenarioReport fin = identities_scenario(IdentityGroup::finite, builtin::a5, 100, 1, untimed());
  CHECK(fin.overall() == Verdict::pass);

  const ScenarioReport ring = ring_audit_scenario(7, untimed());
  CHECK(ring.overall() == Verdict::pass);
  CHECK(*ring.seed == 7);
  // Rationals are exact strings.
  bool saw_half = false;
  for (const auto& [k, v] : ring.payload) saw_half = saw_half || (k.rfind("delta.", 0) == 0 && v == "1/2");
  CHECK(saw_half);
}

TEST_CASE("reports are byte-identical without timing") {
  const std::string first = to_json(report_suite(untimed()));
  const std::string second = to_json(report_suite(untimed()));
  CHECK(first == second);
  const json j = json::parse(first);
  REQUIRE(j.is_array());
  for (const auto& r : j) {
    check_schema(r);
    CHECK(r.at("runtimeMs") == 0);
    CHECK(r.at("verdicts").size() > 0);
    for (const auto& [k, v] : r.at("verdicts").items()) CHECK(v == "pass");
  }
}
