#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weakcomm/group_ring.hpp"
#include "weakcomm/scenarios.hpp"
#include "weakcomm/sidki.hpp"
#include "weakcomm/smith.hpp"

namespace py = pybind11;
using namespace weakcomm;

namespace {

py::dict report_dict(const ScenarioReport& r) {
  py::dict d;
  d["scenario"] = r.scenario;
  d["input_digest"] = r.input_digest;
  d["seed"] = r.seed ? py::cast(*r.seed) : py::none();
  py::dict verdicts;
  for (const auto& [k, v] : r.verdicts) verdicts[py::str(k)] = std::string(to_string(v));
  d["verdicts"] = verdicts;
  d["payload"] = r.payload;
  d["runtime_ms"] = r.runtime_ms;
  d["overall"] = std::string(to_string(r.overall()));
  return d;
}

ScenarioOptions options(std::size_t max_cosets, bool timing) {
  ScenarioOptions o;
  o.limits.max_cosets = max_cosets;
  o.timing = timing;
  return o;
}

std::string rational(const Rational& q) { return q.get_str(); }

}  // namespace

PYBIND11_MODULE(weakcomm, m) {
  m.doc() = "Sidki doubles, coset enumeration and group-ring trace audits";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<LimitExceeded>(m, "LimitExceeded", PyExc_RuntimeError);
  py::register_exception<GroupMismatch>(m, "GroupMismatch", PyExc_ValueError);
  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);
  py::register_exception<HypothesisViolated>(m, "HypothesisViolated", PyExc_ValueError);

  py::class_<Presentation>(m, "Presentation")
      .def_static("parse", [](const std::string& text) { return parse_presentation(text); })
      .def_property_readonly("generators", &Presentation::generators)
      .def_property_readonly("relator_count", [](const Presentation& p) { return p.relators().size(); })
      .def("abelianization",
           [](const Presentation& p) {
             const SmithForm s = abelianization(p);
             std::vector<std::string> factors;
             for (const auto& f : s.factors) factors.push_back(f.get_str());
             return py::make_tuple(factors, s.free_rank);
           })
      .def("is_perfect", [](const Presentation& p) { return is_perfect(p); })
      .def(
          "coset_index",
          [](const Presentation& p, const std::string& subgroup, std::size_t max_cosets) {
            EnumerationLimits limits;
            limits.max_cosets = max_cosets;
            return enumerate(p, parse_word_list(p, subgroup), limits).cosets();
          },
          py::arg("subgroup") = "", py::arg("max_cosets") = EnumerationLimits{}.max_cosets)
      .def("order", [](const Presentation& p) { return realize_presentation(p).order(); })
      .def("__str__", &Presentation::to_string)
      .def("__repr__", [](const Presentation& p) { return "Presentation('" + p.to_string() + "')"; });

  py::class_<ComputableGroup, std::shared_ptr<ComputableGroup>>(m, "Group")
      .def_property_readonly("name", &ComputableGroup::name)
      .def_property_readonly("generators", &ComputableGroup::generator_names)
      .def_property_readonly("has_conjugacy", &ComputableGroup::has_conjugacy);

  m.def("cyclic", [](std::size_t n) { return std::const_pointer_cast<ComputableGroup>(make_cyclic(n)); });
  m.def("free_abelian", [](std::size_t n) { return std::const_pointer_cast<ComputableGroup>(make_free_abelian(n)); });
  m.def("free_group", [](std::size_t n) { return std::const_pointer_cast<ComputableGroup>(make_free_group(n)); });
  m.def("baumslag_solitar",
        [](std::int64_t n) { return std::const_pointer_cast<ComputableGroup>(make_baumslag_solitar(n)); });
  m.def("finite_group", [](const std::string& text) {
    return std::const_pointer_cast<ComputableGroup>(make_finite_carrier(realize_presentation(parse_presentation(text))));
  });

  py::class_<RingElement>(m, "RingElement")
      .def(py::init([](const std::shared_ptr<ComputableGroup>& g, const std::string& text) {
             return parse_ring_element(g, text);
           }),
           py::arg("group"), py::arg("text"))
      .def("kappa", [](const RingElement& x) { return rational(kappa(x)); })
      .def("epsilon", [](const RingElement& x) { return rational(epsilon(x)); })
      .def("is_idempotent", [](const RingElement& x) { return is_idempotent(x); })
      .def_property_readonly("support_size", &RingElement::support_size)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("__str__", &RingElement::to_string)
      .def("__repr__", [](const RingElement& x) { return "RingElement('" + x.to_string() + "')"; });

  py::class_<RingMatrix>(m, "RingMatrix")
      .def(py::init([](const std::vector<std::vector<RingElement>>& rows) {
        const std::size_t n = rows.size();
        std::vector<RingElement> entries;
        for (const auto& row : rows) {
          if (row.size() != n) throw std::invalid_argument("RingMatrix: rows must form a square matrix");
          entries.insert(entries.end(), row.begin(), row.end());
        }
        return RingMatrix(n, std::move(entries));
      }))
      .def_property_readonly("size", &RingMatrix::size)
      .def("kappa", [](const RingMatrix& a) { return rational(kappa(a)); })
      .def("epsilon", [](const RingMatrix& a) { return rational(epsilon(a)); })
      .def("is_idempotent", [](const RingMatrix& a) { return is_idempotent(a); })
      .def("hattori_stallings",
           [](const RingMatrix& a) {
             const ClassFunction hs = hattori_stallings(a);
             py::dict d;
             for (const auto& [k, v] : hs.values) d[py::str(a.group()->format(k))] = rational(v);
             return d;
           })
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("__str__", &RingMatrix::to_string);

  m.def("torsion_idempotent", [](const std::shared_ptr<ComputableGroup>& g, const std::string& word, std::size_t n) {
    return torsion_idempotent(g, g->from_word(Presentation(g->generator_names(), {}).parse_word(word)), n);
  });

  m.def("trace_audit", [](const RingMatrix& a) {
    const TraceReport r = trace_audit(a);
    py::dict d;
    d["kappa"] = rational(r.kappa);
    d["epsilon"] = rational(r.epsilon);
    d["delta"] = rational(r.delta);
    d["kappa_nonnegative"] = r.kappa_nonnegative;
    d["epsilon_integral_in_range"] = r.epsilon_integral_in_range;
    d["weak_bass"] = r.weak_bass;
    d["kaplansky_dichotomy"] = r.kaplansky_dichotomy ? py::cast(*r.kaplansky_dichotomy) : py::none();
    d["hattori_stallings_consistent"] =
        r.hattori_stallings_consistent ? py::cast(*r.hattori_stallings_consistent) : py::none();
    d["constraints_hold"] = r.constraints_hold();
    return d;
  });

  m.def("double_presentation", [](const std::string& text, bool full) {
    const Presentation p = parse_presentation(text);
    if (!full) return double_presentation(p).presentation;
    return full_double(realize_presentation(p)).presentation;
  }, py::arg("text"), py::arg("full") = true);

  const std::size_t default_cosets = EnumerationLimits{}.max_cosets;
  m.def("parse", [](const std::string& t, std::size_t c, bool timing) { return report_dict(parse_scenario(t, options(c, timing))); },
        py::arg("text"), py::arg("max_cosets") = default_cosets, py::arg("timing") = true);
  m.def("enumerate",
        [](const std::string& t, const std::string& subgroup, std::size_t c, bool timing) {
          return report_dict(enumerate_scenario(t, subgroup, options(c, timing)));
        },
        py::arg("text"), py::arg("subgroup") = "", py::arg("max_cosets") = default_cosets, py::arg("timing") = true);
  m.def("double",
        [](const std::string& t, bool full, std::size_t c, bool timing) {
          return report_dict(
              double_scenario(t, full ? Schedule::full : Schedule::generators_only, options(c, timing)));
        },
        py::arg("text"), py::arg("full") = true, py::arg("max_cosets") = default_cosets, py::arg("timing") = true);
  m.def("rocco", [](const std::string& t, std::size_t c, bool timing) { return report_dict(rocco_scenario(t, options(c, timing))); },
        py::arg("text"), py::arg("max_cosets") = default_cosets, py::arg("timing") = true);
  m.def("analyze_w",
        [](const std::string& t, std::size_t c, bool timing) { return report_dict(analyze_w_scenario(t, options(c, timing))); },
        py::arg("text"), py::arg("max_cosets") = default_cosets, py::arg("timing") = true);
  m.def("stem_audit",
        [](const std::string& t, std::size_t c, bool timing) { return report_dict(stem_audit_scenario(t, options(c, timing))); },
        py::arg("text"), py::arg("max_cosets") = default_cosets, py::arg("timing") = true);
  m.def("identities",
        [](const std::string& group, const std::string& text, std::size_t samples, std::uint64_t seed, bool timing) {
          IdentityGroup g = IdentityGroup::f2;
          if (group == "z3") {
            g = IdentityGroup::z3;
          } else if (group == "finite") {
            g = IdentityGroup::finite;
          } else if (group != "f2") {
            throw std::invalid_argument("group must be f2, z3 or finite");
          }
          return report_dict(identities_scenario(g, text, samples, seed, options(default_cosets, timing)));
        },
        py::arg("group") = "f2", py::arg("text") = "", py::arg("samples") = 1000, py::arg("seed") = 7,
        py::arg("timing") = true);
  m.def("ring_audit",
        [](std::uint64_t seed, bool timing) { return report_dict(ring_audit_scenario(seed, options(default_cosets, timing))); },
        py::arg("seed") = 7, py::arg("timing") = true);
}
