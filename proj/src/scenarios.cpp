#include "weakcomm/scenarios.hpp"

#include <chrono>

#include "json.hpp"
#include "weakcomm/smith.hpp"

namespace weakcomm {

namespace {

// Doubles whose X is at most this large are realized; larger ones stay at the coset level.
constexpr std::uint64_t kRealizeBudget = 50'000;

class Run {
 public:
  Run(std::string scenario, std::string_view text, std::string_view flags, const ScenarioOptions& opts)
      : opts_(opts), start_(std::chrono::steady_clock::now()) {
    report_.scenario = std::move(scenario);
    std::string digest_input = report_.scenario;
    digest_input += '\n';
    digest_input += text;
    digest_input += '\n';
    digest_input += flags;
    report_.input_digest = fnv1a_hex(digest_input);
  }

  void verdict(const std::string& name, bool ok) { report_.verdicts[name] = ok ? Verdict::pass : Verdict::fail; }
  void inconclusive(const std::string& name, const std::string& reason) {
    report_.verdicts[name] = Verdict::inconclusive;
    append_reason(reason);
  }
  void fail(const std::string& name, const std::string& reason) {
    report_.verdicts[name] = Verdict::fail;
    append_reason(reason);
  }
  void put(const std::string& key, std::string value) { report_.payload[key] = std::move(value); }
  void put(const std::string& key, std::uint64_t value) { report_.payload[key] = std::to_string(value); }
  void put(const std::string& key, const Rational& value) { report_.payload[key] = value.get_str(); }
  void put_flag(const std::string& key, bool value) { report_.payload[key] = value ? "true" : "false"; }
  void seed(std::uint64_t s) { report_.seed = s; }

  ScenarioReport finish() {
    if (opts_.timing) {
      report_.runtime_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
    }
    return std::move(report_);
  }

 private:
  void append_reason(const std::string& reason) {
    auto& r = report_.payload["reason"];
    r += r.empty() ? reason : "; " + reason;
  }

  const ScenarioOptions& opts_;
  std::chrono::steady_clock::time_point start_;
  ScenarioReport report_;
};

std::string limit_reason(const LimitExceeded& e) {
  const char* what = e.kind() == LimitExceeded::Kind::cosets ? "coset" : "definition";
  return std::string(what) + " limit " + std::to_string(e.limit()) +
         " reached; the index may be infinite or merely large";
}

std::string limits_flags(const ScenarioOptions& opts) {
  return "max-cosets=" + std::to_string(opts.limits.max_cosets) +
         " max-definitions=" + std::to_string(opts.limits.max_definitions);
}

std::string describe_torsion(const TorsionProfile& t) {
  std::string out;
  for (const auto& [order, count] : t.order_counts) {
    if (!out.empty()) out += ",";
    out += std::to_string(order) + ":" + std::to_string(count);
  }
  return out;
}

void put_torsion(Run& run, const TorsionProfile& t) {
  run.put("wElementOrders", describe_torsion(t));
  run.put("wMaxOrder", t.max_order);
  run.put_flag("wHasOrderTwo", t.has_order_two);
}

// Realizes G or records an inconclusive verdict.
std::optional<FiniteGroup> realize_base(Run& run, const Presentation& p, const ScenarioOptions& opts) {
  try {
    FiniteGroup g = realize_presentation(p, opts.limits);
    run.put("baseOrder", g.order());
    return g;
  } catch (const LimitExceeded& e) {
    run.inconclusive("baseFinite", "enumerating G: " + limit_reason(e));
    return std::nullopt;
  }
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "fail";
}

Verdict ScenarioReport::overall() const {
  bool any_inconclusive = false;
  for (const auto& [name, v] : verdicts) {
    if (v == Verdict::fail) return Verdict::fail;
    any_inconclusive = any_inconclusive || v == Verdict::inconclusive;
  }
  return any_inconclusive ? Verdict::inconclusive : Verdict::pass;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return 0;
    case Verdict::fail:
      return 1;
    case Verdict::inconclusive:
      return 3;
  }
  return 1;
}

namespace {

nlohmann::json json_of(const ScenarioReport& r) {
  nlohmann::json j;
  j["scenario"] = r.scenario;
  j["inputDigest"] = r.input_digest;
  if (r.seed) j["seed"] = *r.seed;
  j["verdicts"] = nlohmann::json::object();
  for (const auto& [k, v] : r.verdicts) j["verdicts"][k] = std::string(to_string(v));
  j["payload"] = r.payload;
  j["runtimeMs"] = r.runtime_ms;
  return j;
}

}  // namespace

std::string to_json(const ScenarioReport& r) { return json_of(r).dump(); }

std::string to_json(const std::vector<ScenarioReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(json_of(r));
  return arr.dump(2);
}

std::vector<Word> parse_word_list(const Presentation& p, std::string_view text) {
  std::vector<Word> out;
  int depth = 0;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::string_view piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t\r\n") != std::string_view::npos) out.push_back(p.parse_word(piece));
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '[' || text[i] == '(') ++depth;
    if (text[i] == ']' || text[i] == ')') --depth;
    if (text[i] == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  flush(text.size());
  return out;
}

ScenarioReport parse_scenario(std::string_view text, const ScenarioOptions& opts) {
  Run run("parse", text, "", opts);
  const Presentation p = parse_presentation(text);
  const std::string canonical = p.to_string();
  run.put("canonical", canonical);
  run.put("generators", p.generator_count());
  run.put("relators", p.relators().size());
  run.put("abelianization", describe_abelian(abelianization(p)));
  run.put_flag("perfect", is_perfect(p));
  run.verdict("roundTrip", parse_presentation(canonical) == p);
  return run.finish();
}

ScenarioReport enumerate_scenario(std::string_view text, std::string_view subgroup, const ScenarioOptions& opts,
                                  std::string* dump) {
  Run run("enumerate", text, "subgroup=" + std::string(subgroup) + " " + limits_flags(opts), opts);
  const Presentation p = parse_presentation(text);
  const std::vector<Word> h = parse_word_list(p, subgroup);
  std::string words;
  for (const auto& w : h) words += (words.empty() ? "" : ", ") + p.format_word(w);
  run.put("subgroup", words);
  try {
    EnumerationStats stats;
    const CosetTable t = enumerate(p, h, opts.limits, &stats);
    run.put("index", t.cosets());
    run.put("definitions", stats.definitions);
    run.put("maxLive", stats.max_live);
    run.put("tableDigest", fnv1a_hex(t.dump()));
    run.verdict("closed", t.closed());
    const std::string problem = audit(t);
    if (problem.empty()) {
      run.verdict("audit", true);
    } else {
      run.fail("audit", problem);
    }
    if (dump != nullptr) *dump = t.dump();
  } catch (const LimitExceeded& e) {
    run.inconclusive("closed", limit_reason(e));
  }
  return run.finish();
}

ScenarioReport double_scenario(std::string_view text, Schedule schedule, const ScenarioOptions& opts) {
  const bool full = schedule == Schedule::full;
  Run run("double", text, std::string("schedule=") + (full ? "full" : "generators") + " " + limits_flags(opts), opts);
  const Presentation p = parse_presentation(text);
  std::optional<FiniteGroup> g;
  if (full) {
    g = realize_base(run, p, opts);
    if (!g) return run.finish();
  }
  const DoubleData d = full ? full_double(*g) : double_presentation(p, Schedule::generators_only, nullptr);
  run.put("double", d.presentation.to_string());
  run.put("generators", d.presentation.generator_count());
  run.put("relators", d.presentation.relators().size());
  run.put("commutatorRelators", d.commutator_relators);
  run.put("schedule", full ? "full" : "generators");
  run.put_flag("partial", d.partial);
  run.put("abelianization", describe_abelian(abelianization(d.presentation)));
  std::optional<IdentityOracle> oracle = g ? base_oracle(p, &*g) : base_oracle(p);
  if (!oracle) {
    try {
      g = realize_presentation(p, opts.limits);
      oracle = base_oracle(p, &*g);
    } catch (const LimitExceeded& e) {
      run.inconclusive("mapsVerified", "no word problem solver for the base: " + limit_reason(e));
    }
  }
  if (oracle) {
    const MapVerification v = verify_maps(d, *oracle);
    run.verdict("mapsVerified", v.rho && v.mu_rho && v.omega_rho && v.iota && v.iota_psi);
    run.verdict("retraction", v.retraction);
    run.verdict("diagonals", v.diagonals);
    run.verdict("imageCommutes", v.image_commutes);
  }
  return run.finish();
}

ScenarioReport rocco_scenario(std::string_view text, const ScenarioOptions& opts) {
  Run run("rocco", text, limits_flags(opts), opts);
  const Presentation p = parse_presentation(text);
  const auto g = realize_base(run, p, opts);
  if (!g) return run.finish();
  const RoccoPresentation v = rocco_presentation(*g);
  run.put("candidates", v.candidates);
  run.put("relators", v.presentation.relators().size());
  run.put("presentationDigest", fnv1a_hex(v.presentation.to_string()));
  try {
    const CosetTable t = enumerate(v.presentation, {}, opts.limits);
    run.put("order", t.cosets());
    run.verdict("finite", true);
  } catch (const LimitExceeded& e) {
    run.inconclusive("finite", limit_reason(e));
  }
  return run.finish();
}

ScenarioReport analyze_w_scenario(std::string_view text, const ScenarioOptions& opts) {
  Run run("analyze-w", text, limits_flags(opts), opts);
  const Presentation p = parse_presentation(text);
  const auto g = realize_base(run, p, opts);
  if (!g) return run.finish();
  const DoubleData d = full_double(*g);
  run.put_flag("partial", d.partial);
  run.put("doubleRelators", d.presentation.relators().size());
  run.put("abelianization", describe_abelian(abelianization(d.presentation)));
  const MapVerification mv = verify_maps(d, *base_oracle(p, &*g));
  run.verdict("mapsVerified", mv.all());

  CosetLevelW c;
  try {
    c = coset_level_w(d, *g, opts.limits);
  } catch (const LimitExceeded& e) {
    run.inconclusive("wComputed", "enumerating X over iota_psi(G): " + limit_reason(e));
    return run.finish();
  }
  run.put("index", c.index);
  run.put("xOrder", c.x_order);
  run.put("imageOrder", c.image_order);
  if (c.x_order <= kRealizeBudget) {
    const FiniteGroup x = realize_presentation(d.presentation, opts.limits);
    const SubgroupFamilies f = subgroup_families(d, *g, x);
    run.put("method", "realized");
    run.put("wOrder", f.w.order());
    run.put("lOrder", f.l.order());
    run.put("dOrder", f.d.order());
    run.verdict("wComputed", true);
    run.verdict("lagrange", f.w.order() * f.image.order() == x.order() && x.order() == c.x_order);
    run.verdict("wEqualsDcapL", f.w_is_d_cap_l);
    run.verdict("derivedCubeInImage", f.derived_cube_in_image);
    run.verdict("wNormal", is_normal(f.w));
    put_torsion(run, torsion_probe(f.w));
  } else if (c.faithful && c.w_in_d) {
    run.put("method", "cosetLevel");
    run.put("wOrder", c.w_order);
    run.put("dOrder", c.d_order);
    run.verdict("wComputed", true);
    put_torsion(run, torsion_probe(c.w));
  } else {
    run.put("method", "cosetLevel");
    run.put("wOrder", c.w_order);
    run.inconclusive("wComputed", c.faithful ? "W is not contained in D at the coset level"
                                             : "X is too large to realize and does not act faithfully on the cosets");
  }
  return run.finish();
}

ScenarioReport stem_audit_scenario(std::string_view text, const ScenarioOptions& opts) {
  Run run("stem-audit", text, limits_flags(opts), opts);
  const Presentation p = parse_presentation(text);
  if (!is_perfect(p)) {
    run.fail("hypothesis", "the base group is not perfect");
    return run.finish();
  }
  run.verdict("hypothesis", true);
  const auto g = realize_base(run, p, opts);
  if (!g) return run.finish();
  const DoubleData d = full_double(*g);
  StemAudit a;
  try {
    try {
      a = stem_audit(d, *g, opts.limits);
      run.put("method", "cosetLevel");
    } catch (const std::runtime_error& e) {
      if (dynamic_cast<const LimitExceeded*>(&e) != nullptr) throw;
      const FiniteGroup x = realize_presentation(d.presentation, opts.limits);
      a = stem_audit(d, *g, x);
      run.put("method", "realized");
    }
  } catch (const LimitExceeded& e) {
    run.inconclusive("rhoSurjective", "enumerating X: " + limit_reason(e));
    return run.finish();
  }
  if (a.index) run.put("index", *a.index);
  run.put("xOrder", a.x_order);
  run.put("imageOrder", a.image_order);
  run.put("wOrder", a.w_order);
  put_torsion(run, a.torsion);
  run.verdict("rhoSurjective", a.rho_surjective);
  run.verdict("wCentral", a.w_central);
  run.verdict("wInDerived", a.w_in_derived);
  run.verdict("xPerfect", a.x_perfect);
  run.verdict("verdictsConsistent", a.verdicts_consistent);
  run.verdict("lagrange", a.w_order * a.image_order == a.x_order);
  return run.finish();
}

ScenarioReport identities_scenario(IdentityGroup group, std::string_view finite_text, std::size_t samples,
                                   std::uint64_t seed, const ScenarioOptions& opts) {
  const char* kind = group == IdentityGroup::f2 ? "f2" : group == IdentityGroup::z3 ? "z3" : "finite";
  Run run("identities", group == IdentityGroup::finite ? finite_text : std::string_view{},
          std::string("group=") + kind + " samples=" + std::to_string(samples), opts);
  run.seed(seed);
  CarrierPtr carrier;
  if (group == IdentityGroup::f2) {
    carrier = make_free_group(2);
  } else if (group == IdentityGroup::z3) {
    carrier = make_free_abelian(3);
  } else {
    const Presentation p = parse_presentation(finite_text);
    const auto g = realize_base(run, p, opts);
    if (!g) return run.finish();
    carrier = make_finite_carrier(*g, "G");
  }
  const IdentitySuiteResult r = identity_suite(*carrier, samples, seed);
  run.put("group", carrier->name());
  run.put("samples", r.samples);
  run.put("maxWordLength", std::uint64_t{6});
  run.put("firstFailures", r.first_failures);
  run.put("secondFailures", r.second_failures);
  run.verdict("firstIdentity", r.first_failures == 0);
  run.verdict("secondIdentity", r.second_failures == 0);
  return run.finish();
}

std::vector<CorpusEntry> idempotent_corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> out;
  const CarrierPtr z2 = make_free_abelian(2);
  const CarrierPtr f2 = make_free_group(2);
  const CarrierPtr bs = make_baumslag_solitar(2);
  const CarrierPtr c6 = make_cyclic(6);

  out.push_back({"zero.Z^2.n2", RingMatrix(z2, 2), Rational(0), std::nullopt});
  out.push_back({"identity.Z^2.n3", RingMatrix::identity(z2, 3), Rational(0), std::nullopt});

  for (const CarrierPtr& group : {z2, f2, bs, c6}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (int k = 0; k < 3; ++k) {
        std::vector<bool> diag;
        RingMatrix a = conjugated_diagonal_idempotent(group, n, rng, 3, &diag);
        std::vector<RingElement> entries;
        for (const bool bit : diag) entries.emplace_back(group, Rational(bit ? 1 : 0));
        out.push_back({"conj." + group->name() + ".n" + std::to_string(n) + "." + std::to_string(k), std::move(a),
                       Rational(0), RingMatrix::diagonal(std::move(entries))});
      }
    }
  }

  for (const std::size_t n : {2U, 3U, 4U, 6U}) {
    const CarrierPtr cn = make_cyclic(n);
    const RingElement p = torsion_idempotent(cn, cn->generator(0), n);
    out.push_back({"torsion." + cn->name(), RingMatrix::diagonal({p}), Rational(static_cast<long>(n - 1), n),
                   std::nullopt});
  }

  {
    const CarrierPtr c2 = make_cyclic(2);
    const RingElement p = torsion_idempotent(c2, c2->generator(0), 2);
    out.push_back({"diag(p,0).C_2", RingMatrix::diagonal({p, RingElement::zero(c2)}), Rational(1, 2), std::nullopt});
  }

  {
    const CarrierPtr c4 = make_cyclic(4);
    const RingMatrix b = RingMatrix::diagonal({torsion_idempotent(c4, c4->generator(0), 4), RingElement::one(c4)});
    const InvertiblePair u = random_invertible(c4, 2, rng, 3);
    out.push_back({"conj.torsion.C_4", u.u * b * u.u_inverse, Rational(3, 4), b});
  }

  {
    const FiniteGroup c2 = realize_presentation(parse_presentation(builtin::c2));
    const DoubleData d = full_double(c2);
    const FiniteGroup x = realize_presentation(d.presentation);
    const FiniteGroup cube = realize_presentation(d.cube);
    const CarrierPtr xc = make_finite_carrier(x, "X(C_2)");
    const CarrierPtr cc = make_finite_carrier(cube, "C_2^3");
    const CarrierHom rho = CarrierHom::from_finite(realize_rho(d, x, cube), xc, cc);
    const RingElement p = torsion_idempotent(xc, xc->generator(0), 2);
    const RingMatrix one = RingMatrix::diagonal({p});
    const InvertiblePair u = random_invertible(xc, 2, rng, 3);
    const RingMatrix b = RingMatrix::diagonal({p, RingElement::zero(xc)});
    const RingMatrix two = u.u * b * u.u_inverse;
    out.push_back({"torsion.X(C_2)", one, Rational(1, 2), std::nullopt});
    out.push_back({"rho.torsion.X(C_2)", pushforward(one, rho), Rational(1, 2), std::nullopt});
    out.push_back({"conj.torsion.X(C_2)", two, Rational(1, 2), b});
    out.push_back({"rho.conj.torsion.X(C_2)", pushforward(two, rho), Rational(1, 2), pushforward(b, rho)});
  }
  return out;
}

ScenarioReport ring_audit_scenario(std::uint64_t seed, const ScenarioOptions& opts) {
  Run run("ring-audit", "", "", opts);
  run.seed(seed);
  const auto corpus = idempotent_corpus(seed);
  run.put("entries", corpus.size());
  bool idempotent = true;
  bool zaleskii = true;
  bool expected = true;
  bool hs_consistent = true;
  bool hs_invariant = true;
  bool dichotomy = true;
  std::string bad;
  for (const auto& entry : corpus) {
    if (!is_idempotent(entry.matrix)) {
      idempotent = false;
      bad += " " + entry.label;
      continue;
    }
    const TraceReport r = trace_audit(entry.matrix);
    run.put("kappa." + entry.label, r.kappa);
    run.put("epsilon." + entry.label, r.epsilon);
    run.put("delta." + entry.label, r.delta);
    zaleskii = zaleskii && r.kappa_nonnegative && r.epsilon_integral_in_range;
    if (entry.expected_delta) expected = expected && r.delta == *entry.expected_delta;
    hs_consistent = hs_consistent && r.hattori_stallings_consistent.value_or(true);
    dichotomy = dichotomy && r.kaplansky_dichotomy.value_or(true);
    if (entry.conjugated_from && entry.matrix.group()->has_conjugacy()) {
      hs_invariant =
          hs_invariant && hattori_stallings(entry.matrix).values == hattori_stallings(*entry.conjugated_from).values;
    }
  }
  if (idempotent) {
    run.verdict("idempotent", true);
  } else {
    run.fail("idempotent", "not idempotent:" + bad);
  }
  run.verdict("zaleskii", zaleskii);
  run.verdict("expectedDelta", expected);
  run.verdict("hsConsistency", hs_consistent);
  run.verdict("hsConjugationInvariance", hs_invariant);
  run.verdict("kaplanskyDichotomy", dichotomy);
  bool traces = true;
  std::uint64_t offset = 0;
  for (const CarrierPtr& group : {make_cyclic(6), make_free_abelian(2), make_free_group(2), make_baumslag_solitar(2)}) {
    const TracePropertyResult t = trace_property_suite(group, 200, seed + offset++);
    run.put("traceFailures." + group->name(), t.kappa_failures + t.epsilon_failures);
    traces = traces && t.passed();
  }
  run.verdict("traceProperty", traces);
  return run.finish();
}

std::vector<ScenarioReport> report_suite(const ScenarioOptions& opts) {
  std::vector<ScenarioReport> out;
  out.push_back(enumerate_scenario(builtin::a5, "", opts));
  out.push_back(enumerate_scenario(builtin::a5, "a", opts));
  out.push_back(double_scenario(builtin::c2, Schedule::full, opts));
  out.push_back(analyze_w_scenario(builtin::c2, opts));
  out.push_back(analyze_w_scenario(builtin::klein, opts));
  out.push_back(analyze_w_scenario(builtin::trivial, opts));
  out.push_back(stem_audit_scenario(builtin::trivial, opts));
  out.push_back(stem_audit_scenario(builtin::a5, opts));
  out.push_back(identities_scenario(IdentityGroup::f2, "", 1000, 7, opts));
  out.push_back(identities_scenario(IdentityGroup::z3, "", 1000, 7, opts));
  out.push_back(ring_audit_scenario(7, opts));
  return out;
}

}  // namespace weakcomm
