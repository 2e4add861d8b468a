// Python bindings. Model sets cross the boundary as sorted lists of model
// indices, set sequences as lists of such lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "prefhist/cli.h"
#include "prefhist/enumeration.h"
#include "prefhist/formula.h"
#include "prefhist/history.h"
#include "prefhist/postulates.h"
#include "prefhist/representation.h"

namespace py = pybind11;
using namespace prefhist;

namespace {

using Models = std::vector<int>;

ModelSet to_set(const Models& models, const Universe& u) {
  ModelSet s;
  for (int m : models) {
    if (m < 0 || m >= u.size()) throw Error("model " + std::to_string(m) + " outside the universe");
    s = s | ModelSet::singleton(m);
  }
  return s;
}

SetSequence to_sequence(const std::vector<Models>& seq, const Universe& u) {
  SetSequence out;
  for (const auto& s : seq) out.push_back(to_set(s, u));
  return out;
}

ObservationSequence observations(const std::vector<std::string>& texts, const Universe& u) {
  ObservationSequence obs;
  for (const auto& t : texts) obs.push_back(models_of(parse_formula(t, u), u));
  return obs;
}

py::dict report_dict(const CheckReport& r) {
  py::list violations;
  for (const auto& v : r.violations) {
    py::list witness;
    for (const auto& s : v.witness) witness.append(to_string(s));
    violations.append(py::dict(py::arg("condition") = v.condition, py::arg("witness") = witness,
                               py::arg("detail") = v.detail));
  }
  return py::dict(py::arg("theorem") = r.theorem, py::arg("verdict") = r.verdict,
                  py::arg("violation_count") = r.violation_count, py::arg("violations") = violations,
                  py::arg("text") = to_text(r));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Belief update by preferred histories";
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def(
      "models",
      [](const std::string& formula, int atoms) {
        const auto u = Universe::atoms(atoms);
        return models_of(parse_formula(formula, u), u).members();
      },
      py::arg("formula"), py::arg("atoms"), "Models of a formula over p0..p{atoms-1}.");

  m.def(
      "render",
      [](const Models& models, int atoms) {
        const auto u = Universe::atoms(atoms);
        return render_model_set(to_set(models, u), u);
      },
      py::arg("models"), py::arg("atoms"));

  m.def(
      "update",
      [](const std::vector<std::string>& formulas, int atoms) {
        const auto u = Universe::atoms(atoms);
        const auto obs = observations(formulas, u);
        return update_from_ranking(FixedRanking::canonical(static_cast<int>(obs.size()), u), obs).members();
      },
      py::arg("formulas"), py::arg("atoms") = 2, "Fixed-length update under the canonical ranking.");

  m.def(
      "update_general",
      [](const std::vector<std::string>& formulas, int atoms, int maxlen, std::optional<std::uint64_t> seed) {
        const auto u = Universe::atoms(atoms);
        const auto obs = observations(formulas, u);
        const int len = maxlen > 0 ? maxlen : std::max<int>(1, static_cast<int>(obs.size()));
        const auto r = seed ? make_valid_general_ranking(u, len, *seed) : GeneralRanking::canonical(u, len);
        return update_general(obs, r).members();
      },
      py::arg("formulas"), py::arg("atoms") = 2, py::arg("maxlen") = 0, py::arg("seed") = py::none(),
      "Update by preferred histories; a seed selects a random valid ranking instead of the canonical one.");

  py::class_<OperatorTable>(m, "OperatorTable")
      .def_static(
          "from_text",
          [](const std::string& text) {
            std::istringstream in(text);
            return read_operator_table(in);
          })
      .def_static(
          "from_ranking",
          [](int n, int universe, const std::vector<Rank>& ranks) {
            FixedRanking r(n, Universe::abstract(universe));
            if (ranks.size() != r.tuple_count()) throw Error("expected " + std::to_string(r.tuple_count()) + " ranks");
            std::copy(ranks.begin(), ranks.end(), r.mutable_ranks().begin());
            return table_from_ranking(r);
          },
          py::arg("n"), py::arg("universe"), py::arg("ranks"))
      .def_property_readonly("dimension", &OperatorTable::dimension)
      .def_property_readonly("universe_size", [](const OperatorTable& t) { return t.universe().size(); })
      .def("__len__", &OperatorTable::size)
      .def("at",
           [](const OperatorTable& t, const std::vector<Models>& seq) {
             return t.at(to_sequence(seq, t.universe())).members();
           })
      .def("to_text",
           [](const OperatorTable& t) {
             std::ostringstream out;
             write_operator_table(out, t);
             return out.str();
           })
      .def("__eq__", [](const OperatorTable& a, const OperatorTable& b) { return a == b; });

  m.def("builtin_counterexample", &builtin_counterexample);

  m.def(
      "check",
      [](const OperatorTable& t, const std::string& theorem, bool relaxed) {
        if (theorem == "2d-tight") return report_dict(check_theorem_2d(t, RelationVariant::kTwoDTight));
        if (theorem == "2d-wide") return report_dict(check_theorem_2d(t, RelationVariant::kTwoDWide));
        if (theorem == "suggested-tight") return report_dict(check_suggested_3d(t, RelationVariant::kThreeDTight));
        if (theorem == "suggested-wide") return report_dict(check_suggested_3d(t, RelationVariant::kThreeDWide));
        if (theorem == "nd") return report_dict(check_theorem_nd(t, relaxed ? PatchMode::kRelaxed : PatchMode::kTight));
        throw Error("unknown theorem '" + theorem + "'");
      },
      py::arg("table"), py::arg("theorem") = "nd", py::arg("relaxed") = false);

  m.def("is_representable", [](const OperatorTable& t) { return is_representable_bruteforce(t); },
        py::arg("table"));

  m.def(
      "synthesize",
      [](const OperatorTable& t) {
        const auto r = synthesize_ranking(t);
        return std::vector<Rank>(r.ranks().begin(), r.ranks().end());
      },
      py::arg("table"), "Ranks indexed by tuple, first coordinate most significant.");

  m.def(
      "sweep",
      [](int n, int universe, const std::string& conditions, std::optional<std::uint64_t> sample,
         std::uint64_t seed) {
        SweepOptions options;
        options.sample = sample;
        options.seed = seed;
        const auto r = sweep(OperatorShape(n, Universe::abstract(universe)), parse_condition_set(conditions), options);
        return py::dict(py::arg("examined") = r.examined, py::arg("passed") = r.passed,
                        py::arg("representable") = r.representable, py::arg("counterexamples") = r.counterexamples,
                        py::arg("false_negatives") = r.false_negatives, py::arg("oracle") = r.oracle,
                        py::arg("summary") = summary_line(r));
      },
      py::arg("n") = 3, py::arg("universe") = 2, py::arg("conditions") = "suggested-wide",
      py::arg("sample") = py::none(), py::arg("seed") = 0);

  m.def(
      "postulates",
      [](std::optional<std::uint64_t> seed, const std::vector<std::string>& pool, int maxlen) {
        const auto u = Universe::atoms(2);
        std::vector<Formula> formulas;
        for (const auto& f : pool) formulas.push_back(parse_formula(f, u));
        const auto r = seed ? make_valid_general_ranking(u, maxlen, *seed) : GeneralRanking::canonical(u, maxlen);
        py::dict out;
        for (const auto& p : check_postulate_suite(r, formulas, maxlen).results) out[py::str(p.id)] = p.passed;
        return out;
      },
      py::arg("seed") = py::none(),
      py::arg("pool") = std::vector<std::string>{"p0", "p1", "!p0", "p0 | p1"}, py::arg("maxlen") = 3,
      "Property verdicts over two atoms; a seed selects a random valid ranking.");

  m.def(
      "u8_witness",
      [](int universe) -> py::object {
        const auto w = find_km_u8_violation(Universe::abstract(universe));
        if (!w) return py::none();
        return py::dict(py::arg("a") = w->a.members(), py::arg("a_prime") = w->a_prime.members(),
                        py::arg("b") = w->b.members(), py::arg("joined") = w->joined.members(),
                        py::arg("separate") = w->separate.members());
      },
      py::arg("universe") = 2);

  m.def(
      "cli",
      [](const std::vector<std::string>& args, const std::string& input) {
        std::istringstream in(input);
        std::ostringstream out, err;
        const int code = cli::run(args, in, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("input") = "", "Runs the command line; returns (exit code, stdout, stderr).");
}
