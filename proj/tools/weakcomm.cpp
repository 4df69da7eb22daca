// Command-line driver: each subcommand runs one scenario and prints its JSON report.
// Exit codes: 0 pass, 1 fail, 2 usage, 3 inconclusive.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "weakcomm/scenarios.hpp"

namespace {

constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int emit(const weakcomm::ScenarioReport& r) {
  std::cout << weakcomm::to_json(r) << "\n";
  return weakcomm::exit_code(r.overall());
}

}  // namespace

int main(int argc, char** argv) {
  using namespace weakcomm;
  CLI::App app{"Sidki doubles, coset enumeration and group ring trace audits"};
  app.require_subcommand(1);
  app.fallthrough();

  ScenarioOptions opts;
  bool no_timing = false;
  app.add_option("--max-cosets", opts.limits.max_cosets, "Coset limit for every enumeration")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-definitions", opts.limits.max_definitions, "Definition limit for every enumeration")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-timing", no_timing, "Report runtimeMs as 0 for byte-identical output");

  std::string file;
  auto* parse = app.add_subcommand("parse", "Echo the canonical presentation");
  parse->add_option("FILE", file, "Presentation file")->required();

  std::string subgroup;
  std::string dump_path;
  auto* enumerate = app.add_subcommand("enumerate", "Coset enumeration");
  enumerate->add_option("FILE", file, "Presentation file")->required();
  enumerate->add_option("--subgroup", subgroup, "Comma-separated subgroup generators (default: trivial)");
  enumerate->add_option("--dump", dump_path, "Write the closed coset table to this path");

  std::string schedule = "full";
  auto* dbl = app.add_subcommand("double", "Build the double X(G)");
  dbl->add_option("FILE", file, "Presentation file")->required();
  dbl->add_option("--schedule", schedule, "full or generators")->check(CLI::IsMember({"full", "generators"}));

  auto* rocco = app.add_subcommand("rocco", "Build and enumerate V(G)");
  rocco->add_option("FILE", file, "Presentation file")->required();

  auto* analyze = app.add_subcommand("analyze-w", "Compute W(G) and its torsion");
  analyze->add_option("FILE", file, "Presentation file")->required();

  auto* stem = app.add_subcommand("stem-audit", "Stem-extension audit for perfect G");
  stem->add_option("FILE", file, "Presentation file")->required();

  std::string group = "f2";
  std::size_t samples = 1000;
  std::uint64_t seed = 7;
  auto* identities = app.add_subcommand("identities", "Commutator identity suite in G x G x G");
  identities->add_option("--group", group, "f2, z3, or finite")->check(CLI::IsMember({"f2", "z3", "finite"}));
  identities->add_option("FILE", file, "Presentation file for --group finite");
  identities->add_option("--samples", samples, "Number of random quadruples");
  identities->add_option("--seed", seed, "Random seed");

  auto* ring = app.add_subcommand("ring-audit", "Audit the idempotent corpus");
  ring->add_option("--seed", seed, "Random seed");

  std::string json_path;
  auto* report = app.add_subcommand("report", "Run the built-in suite");
  report->add_option("--json", json_path, "Write the reports to this path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  opts.timing = !no_timing;

  try {
    if (*parse) return emit(parse_scenario(read_file(file), opts));
    if (*enumerate) {
      std::string dump;
      const auto r = enumerate_scenario(read_file(file), subgroup, opts, dump_path.empty() ? nullptr : &dump);
      if (!dump_path.empty() && !dump.empty()) write_file(dump_path, dump);
      return emit(r);
    }
    if (*dbl) {
      return emit(double_scenario(read_file(file), schedule == "full" ? Schedule::full : Schedule::generators_only, opts));
    }
    if (*rocco) return emit(rocco_scenario(read_file(file), opts));
    if (*analyze) return emit(analyze_w_scenario(read_file(file), opts));
    if (*stem) return emit(stem_audit_scenario(read_file(file), opts));
    if (*identities) {
      const IdentityGroup kind = group == "f2" ? IdentityGroup::f2 : group == "z3" ? IdentityGroup::z3 : IdentityGroup::finite;
      if (kind == IdentityGroup::finite && file.empty()) {
        std::cerr << "identities --group finite needs a presentation FILE\n";
        return kUsage;
      }
      return emit(identities_scenario(kind, kind == IdentityGroup::finite ? read_file(file) : "", samples, seed, opts));
    }
    if (*ring) return emit(ring_audit_scenario(seed, opts));
    if (*report) {
      const auto reports = report_suite(opts);
      write_file(json_path, to_json(reports) + "\n");
      Verdict worst = Verdict::pass;
      for (const auto& r : reports) {
        std::cout << to_json(r) << "\n";
        const Verdict v = r.overall();
        if (v == Verdict::fail || (v == Verdict::inconclusive && worst == Verdict::pass)) worst = v;
      }
      return exit_code(worst);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
