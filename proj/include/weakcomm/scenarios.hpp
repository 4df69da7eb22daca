#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weakcomm/coset_table.hpp"
#include "weakcomm/group_ring.hpp"
#include "weakcomm/sidki.hpp"

namespace weakcomm {

enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Verdict v);

/// Outcome of one named verification scenario.
struct ScenarioReport {
  std::string scenario;
  std::string input_digest;
  std::optional<std::uint64_t> seed;
  std::map<std::string, Verdict> verdicts;
  /// Orders, indices and exact rationals as strings; `reason` explains any inconclusive verdict.
  std::map<std::string, std::string> payload;
  std::int64_t runtime_ms = 0;

  /// fail if any verdict fails, else inconclusive if any is, else pass.
  Verdict overall() const;
};

/// 0 pass, 1 fail, 3 inconclusive.
int exit_code(Verdict v);

std::string to_json(const ScenarioReport& r);
std::string to_json(const std::vector<ScenarioReport>& reports);

struct ScenarioOptions {
  EnumerationLimits limits;
  /// When false, runtime_ms is reported as 0 so reports are byte-identical across runs.
  bool timing = true;
};

/// Comma-separated words; commas inside commutator brackets do not split.
std::vector<Word> parse_word_list(const Presentation& p, std::string_view text);

ScenarioReport parse_scenario(std::string_view text, const ScenarioOptions& opts = {});
/// `dump`, when given, receives the table dump of a closed enumeration.
ScenarioReport enumerate_scenario(std::string_view text, std::string_view subgroup, const ScenarioOptions& opts = {},
                                  std::string* dump = nullptr);
ScenarioReport double_scenario(std::string_view text, Schedule schedule, const ScenarioOptions& opts = {});
ScenarioReport rocco_scenario(std::string_view text, const ScenarioOptions& opts = {});
ScenarioReport analyze_w_scenario(std::string_view text, const ScenarioOptions& opts = {});
ScenarioReport stem_audit_scenario(std::string_view text, const ScenarioOptions& opts = {});

enum class IdentityGroup { f2, z3, finite };

ScenarioReport identities_scenario(IdentityGroup group, std::string_view finite_text, std::size_t samples,
                                   std::uint64_t seed, const ScenarioOptions& opts = {});
ScenarioReport ring_audit_scenario(std::uint64_t seed, const ScenarioOptions& opts = {});

/// The built-in suite behind `report`.
std::vector<ScenarioReport> report_suite(const ScenarioOptions& opts = {});

/// Idempotents with independently known weak-Bass delta: conjugated 0/1 diagonals over Z^2, F_2,
/// BS(1,2) and C_6, torsion idempotents over C_n, and rho-pushforwards from X(C_2).
std::vector<CorpusEntry> idempotent_corpus(std::uint64_t seed);

/// Built-in presentations.
namespace builtin {
inline constexpr std::string_view trivial = "< | >";
inline constexpr std::string_view c2 = "< a | a^2 >";
inline constexpr std::string_view klein = "< a, b | a^2, b^2, [a,b] >";
inline constexpr std::string_view a5 = "< a, b | a^2, b^3, (a*b)^5 >";
}  // namespace builtin

}  // namespace weakcomm
