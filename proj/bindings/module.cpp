// Python face of the workbench: build a system, duplicate instructions,
// run and judge tests, search for failures, sweep for bugs, check laws.
// Reports cross the boundary as JSON strings so both sides agree on bytes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include <sqed/config.hpp>
#include <sqed/errors.hpp>
#include <sqed/inits.hpp>
#include <sqed/laws.hpp>
#include <sqed/oracle.hpp>
#include <sqed/qed.hpp>
#include <sqed/report.hpp>
#include <sqed/search.hpp>
#include <sqed/zoo.hpp>

namespace py = pybind11;
using namespace sqed;

namespace {

// (opcode name, out, in1, in2) <-> Instruction
using PyInstr = std::tuple<std::string, Location, Location, Location>;

Instruction instr_in(const TransitionSystem& sys, const PyInstr& t) {
  auto op = sys.find_opcode(std::get<0>(t));
  if (!op)
    throw DomainError("unknown opcode \"" + std::get<0>(t) + "\" on " +
                      sys.name());
  Instruction i{*op, std::get<1>(t), {std::get<2>(t), std::get<3>(t)}};
  sys.validate_instr(i);
  return i;
}

PyInstr instr_out(const TransitionSystem& sys, const Instruction& i) {
  return {sys.opcode(i.op).name, i.out, i.in[0], i.in[1]};
}

TestFamily family_in(const std::string& name) {
  auto f = family_from_name(name);
  if (!f) throw DomainError("unknown test family \"" + name + "\"");
  return *f;
}

struct PySystem {
  BuiltSystem b;

  explicit PySystem(ProcessorConfig cfg) : b(build_system(std::move(cfg))) {}

  State make_init(const std::optional<ArchState>& arch) const {
    if (!arch) return b.sys.initial_state(ArchState(b.sys.locations(), 0));
    return b.sys.initial_state(*arch);
  }

  py::dict verdict_out(const Verdict& v) const {
    py::dict d;
    d["pass"] = v.pass;
    py::list mm;
    for (const auto& [x, y] : v.mismatches) mm.append(py::make_tuple(x, y));
    d["mismatches"] = std::move(mm);
    d["witness"] = v.witness
                       ? py::object(py::make_tuple(v.witness->first,
                                                   v.witness->second))
                       : py::object(py::none());
    return d;
  }
};

}  // namespace

PYBIND11_MODULE(_sqed, m) {
  m.doc() = "finite processor models, instruction duplication and "
            "bounded test search";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<ConstructionError>(m, "ConstructionError");
  py::register_exception<ResourceError>(m, "ResourceError");

  m.def("builtin_names", &builtin_names, "names of the built-in systems");

  py::class_<PySystem>(m, "System")
      .def_static(
          "builtin",
          [](const std::string& name) { return PySystem(builtin_config(name)); },
          py::arg("name"))
      .def_static(
          "from_json",
          [](const std::string& text) { return PySystem(config_from_json(text)); },
          py::arg("text"))
      .def_static(
          "from_file",
          [](const std::string& path) { return PySystem(load_config_file(path)); },
          py::arg("path"))
      .def_property_readonly(
          "name", [](const PySystem& s) { return s.b.sys.name(); })
      .def_property_readonly(
          "values", [](const PySystem& s) { return s.b.sys.values(); })
      .def_property_readonly(
          "locations", [](const PySystem& s) { return s.b.sys.locations(); })
      .def_property_readonly(
          "reference", [](const PySystem& s) { return s.b.reference(); })
      .def("describe_json",
           [](const PySystem& s) { return config_to_json(s.b.config); })
      .def(
          "dup_location",
          [](const PySystem& s, Location l) { return s.b.dup.dup_of(l); },
          py::arg("location"))
      .def(
          "dup_instr",
          [](const PySystem& s, const PyInstr& i) {
            return instr_out(s.b.sys, dup_instr(s.b.dup, instr_in(s.b.sys, i)));
          },
          py::arg("instr"))
      .def(
          "standard_test",
          [](const PySystem& s, const std::vector<PyInstr>& originals) {
            InstrSeq half;
            for (const PyInstr& i : originals)
              half.push_back(instr_in(s.b.sys, i));
            std::vector<PyInstr> out;
            for (const Instruction& i :
                 make_standard_test(s.b.dup, half).instrs)
              out.push_back(instr_out(s.b.sys, i));
            return out;
          },
          py::arg("originals"))
      .def(
          "is_test",
          [](const PySystem& s, const std::vector<PyInstr>& instrs,
             const std::string& family) {
            InstrSeq seq;
            for (const PyInstr& i : instrs) seq.push_back(instr_in(s.b.sys, i));
            return is_qed_test(s.b.sys, s.b.dup, seq, family_in(family));
          },
          py::arg("instrs"), py::arg("family") = "standard")
      .def(
          "run_test",
          [](const PySystem& s, const std::vector<PyInstr>& instrs,
             const std::string& family, const std::optional<ArchState>& init) {
            QedTest t;
            t.family = family_in(family);
            for (const PyInstr& i : instrs)
              t.instrs.push_back(instr_in(s.b.sys, i));
            Verdict v = run_qed_test(s.b.sys, s.b.dup, t, s.make_init(init));
            return s.verdict_out(v);
          },
          py::arg("instrs"), py::arg("family") = "standard",
          py::arg("init") = py::none())
      .def(
          "search_json",
          [](const PySystem& s, std::optional<std::uint32_t> bound,
             const std::optional<std::vector<std::string>>& families,
             unsigned jobs) {
            SearchConfig sc;
            sc.bound = bound.value_or(s.b.config.search.bound);
            if (families) {
              sc.families.clear();
              for (const std::string& f : *families)
                sc.families.push_back(family_in(f));
            } else {
              sc.families = s.b.config.search.families;
            }
            sc.alphabet = s.b.config.search.alphabet;
            sc.inits = s.b.config.search.inits;
            sc.max_insertions = s.b.config.search.max_insertions;
            sc.jobs = jobs;
            SearchResult r = bmc_search(s.b.sys, s.b.dup, sc);
            return search_report_json(s.b.sys, r,
                                      manifest_for("check", s.b.config, s.b.sys));
          },
          py::arg("bound") = py::none(), py::arg("families") = py::none(),
          py::arg("jobs") = 1)
      .def(
          "oracle_json",
          [](const PySystem& s, std::uint32_t depth, unsigned jobs) {
            auto inits = enumerate_inits(s.b.sys, s.b.config.search.inits);
            OracleResult r =
                find_bugs(s.b.sys, s.b.spec, inits, depth,
                          s.b.config.search.alphabet, Budget{}, jobs);
            RunManifest m = manifest_for("oracle", s.b.config, s.b.sys);
            m.depth = depth;
            return oracle_report_json(s.b.sys, r, m);
          },
          py::arg("depth") = 2, py::arg("jobs") = 1);

  m.def(
      "check_laws_json",
      [](const std::optional<std::vector<std::string>>& systems,
         const std::optional<std::vector<std::string>>& laws, unsigned jobs) {
        std::vector<BuiltSystem> corpus;
        std::vector<std::string> names;
        if (systems) {
          for (const std::string& s : *systems) {
            corpus.push_back(build_system(resolve_config(s)));
            names.push_back(corpus.back().sys.name());
          }
        } else {
          for (const ProcessorConfig& c : builtin_corpus()) {
            corpus.push_back(build_system(c));
            names.push_back(corpus.back().sys.name());
          }
        }
        std::vector<LawId> ids;
        if (laws) {
          for (const std::string& l : *laws) {
            auto id = law_from_name(l);
            if (!id) throw DomainError("unknown law \"" + l + "\"");
            ids.push_back(*id);
          }
        } else {
          ids = all_laws();
        }
        LawBudget budget;
        budget.jobs = jobs;
        std::vector<LawReport> reports;
        for (LawId id : ids) reports.push_back(check_law(id, corpus, budget));

        RunManifest m;
        m.command = "laws";
        std::string joined;
        for (const std::string& n : names)
          joined += (joined.empty() ? "" : ",") + n;
        m.system = joined;
        m.init_kind = "per-system";
        Budget b;
        m.max_states = b.max_states;
        m.max_tests = b.max_tests;
        return laws_report_json(reports, m);
      },
      py::arg("systems") = py::none(), py::arg("laws") = py::none(),
      py::arg("jobs") = 1);
}
