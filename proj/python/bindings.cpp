#include "ltlkit/errors.hpp"
#include "ltlkit/eval.hpp"
#include "ltlkit/formula.hpp"
#include "ltlkit/kripke.hpp"
#include "ltlkit/reduction.hpp"
#include "ltlkit/sat.hpp"
#include "ltlkit/turing.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

namespace py = pybind11;
using namespace ltlkit;

namespace {

std::string outcome_name(SatOutcome outcome) {
    switch (outcome) {
        case SatOutcome::Satisfiable: return "sat";
        case SatOutcome::Unsatisfiable: return "unsat";
        case SatOutcome::Inconclusive: break;
    }
    return "inconclusive";
}

std::string valid_name(ValidOutcome outcome) {
    switch (outcome) {
        case ValidOutcome::Valid: return "valid";
        case ValidOutcome::NotValid: return "not-valid";
        case ValidOutcome::Inconclusive: break;
    }
    return "inconclusive";
}

struct PyVerifyReport {
    bool answer;
    bool formula;
    bool consistent;
};

}  // namespace

PYBIND11_MODULE(_ltlkit, m) {
    m.doc() = "Linear-time temporal logic toolkit: lasso evaluation, satisfiability, "
              "and machine-run reductions";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SemanticError>(m, "SemanticError", PyExc_ValueError);

    py::class_<Formula>(m, "Formula")
        .def_static("var", &Formula::var, py::arg("index"))
        .def_static("falsum", &Formula::falsum)
        .def_static("truth", &Formula::truth)
        .def_static("implies", &Formula::implies)
        .def_static("next", &Formula::next)
        .def_static("until", &Formula::until)
        .def_static("neg", &Formula::neg)
        .def_static("conj", &Formula::conj)
        .def_static("disj", &Formula::disj)
        .def_static("eventually", &Formula::eventually)
        .def_static("always", &Formula::always)
        .def_static("next_power", &Formula::next_power, py::arg("n"), py::arg("f"))
        .def("__str__", &to_string)
        .def("__repr__", [](Formula f) { return "<Formula " + to_string(f) + ">"; })
        .def("__eq__", [](Formula a, Formula b) { return a == b; })
        .def("__hash__", [](Formula f) { return f.id(); });

    m.def("parse", [](const std::string& text) { return parse(text); }, py::arg("text"));
    m.def("count_vars", &count_vars);
    m.def("node_count", &node_count);
    m.def("dag_size", &dag_size);
    m.def("reduce_closed", &reduce_closed);

    py::class_<LassoPath>(m, "LassoPath")
        .def(py::init([](std::vector<int> prefix, std::vector<int> loop) {
                 return LassoPath{std::move(prefix), std::move(loop)};
             }),
             py::arg("prefix"), py::arg("loop"))
        .def_readonly("prefix", &LassoPath::prefix)
        .def_readonly("loop", &LassoPath::loop)
        .def("at", &LassoPath::at, py::arg("i"));

    py::class_<KripkeModel>(m, "KripkeModel")
        .def(py::init<int>(), py::arg("state_count"))
        .def_property_readonly("state_count", &KripkeModel::state_count)
        .def("add_edge", &KripkeModel::add_edge)
        .def("has_edge", &KripkeModel::has_edge)
        .def("successors", &KripkeModel::successors)
        .def("set_true", &KripkeModel::set_true, py::arg("var"), py::arg("state"))
        .def("holds", &KripkeModel::holds, py::arg("var"), py::arg("state"))
        .def("to_text",
             [](const KripkeModel& model, std::optional<LassoPath> path) {
                 return write_model_file(model, path ? &*path : nullptr);
             },
             py::arg("path") = std::nullopt);

    m.def("read_model_file", [](const std::string& text) {
        ModelFile mf = read_model_file(text);
        return py::make_tuple(std::move(mf.model), std::move(mf.path));
    });
    m.def("validate_model", [](const KripkeModel& model) { return validate_model(model).problems; });
    m.def("validate_path", [](const KripkeModel& model, const LassoPath& path) {
        return validate_path(model, path).problems;
    });

    m.def("eval_lasso", &eval_lasso, py::arg("model"), py::arg("path"), py::arg("formula"));
    m.def("oracle_eval", &oracle_eval, py::arg("model"), py::arg("path"), py::arg("formula"));

    py::class_<SatResult>(m, "SatResult")
        .def_property_readonly("outcome", [](const SatResult& r) { return outcome_name(r.outcome); })
        .def_property_readonly("witness",
                               [](const SatResult& r) -> std::optional<py::tuple> {
                                   if (!r.witness) return std::nullopt;
                                   return py::make_tuple(r.witness->model, r.witness->path);
                               })
        .def_readonly("atoms", &SatResult::atoms)
        .def_readonly("constructions", &SatResult::constructions)
        .def("__repr__",
             [](const SatResult& r) { return "<SatResult " + outcome_name(r.outcome) + ">"; });

    m.def("sat",
          [](Formula f, std::uint64_t atom_budget) { return sat(f, SatOptions{atom_budget}); },
          py::arg("formula"), py::arg("atom_budget") = SatOptions{}.atom_budget);
    m.def("valid",
          [](Formula f, std::uint64_t atom_budget) {
              return valid_name(valid(f, SatOptions{atom_budget}));
          },
          py::arg("formula"), py::arg("atom_budget") = SatOptions{}.atom_budget);

    py::class_<TmSpec>(m, "TmSpec")
        .def_readonly("states", &TmSpec::states)
        .def_readonly("alphabet", &TmSpec::alphabet)
        .def_readonly("start", &TmSpec::start)
        .def_readonly("final_state", &TmSpec::final_state)
        .def_readonly("blank", &TmSpec::blank)
        .def_readonly("left_marker", &TmSpec::left_marker)
        .def_readonly("space_poly", &TmSpec::space_poly)
        .def("to_text", &write_tm_file);

    m.def("read_tm_file", [](const std::string& text) { return read_tm_file(text); });
    m.def("validate_tm", [](const TmSpec& tm) { return validate_tm(tm).problems; });
    m.def("parse_word", &parse_word, py::arg("tm"), py::arg("word"));

    py::class_<RunResult>(m, "RunResult")
        .def_property_readonly("accepted", [](const RunResult& r) { return r.accepted; })
        .def_property_readonly("prefix_length", &RunResult::prefix_length)
        .def_property_readonly("cycle_length", &RunResult::cycle_length);

    m.def("simulate",
          [](const TmSpec& tm, const std::string& word) { return simulate(tm, parse_word(tm, word)); },
          py::arg("tm"), py::arg("word"));

    py::class_<Layout>(m, "Layout")
        .def_readonly("n1", &Layout::n1)
        .def_readonly("n2", &Layout::n2)
        .def_readonly("k", &Layout::k)
        .def_readonly("space", &Layout::space)
        .def_property_readonly("cycle_length", &Layout::cycle_length)
        .def("offset", &Layout::offset)
        .def("to_text", &write_layout_file);

    py::class_<ReductionOutput>(m, "ReductionOutput")
        .def_readonly("layout", &ReductionOutput::layout)
        .def_readonly("model", &ReductionOutput::model)
        .def_readonly("run", &ReductionOutput::run)
        .def_readonly("psi", &ReductionOutput::psi)
        .def_readonly("psi_start", &ReductionOutput::psi_start)
        .def_readonly("psi_delta", &ReductionOutput::psi_delta)
        .def_readonly("psi_positive", &ReductionOutput::psi_positive)
        .def_property_readonly("accepted",
                               [](const ReductionOutput& r) { return r.machine_run.accepted; });

    m.def("reduce",
          [](const TmSpec& tm, const std::string& word) { return build_psi(tm, parse_word(tm, word)); },
          py::arg("tm"), py::arg("word"));

    py::class_<PyVerifyReport>(m, "VerifyReport")
        .def_readonly("answer", &PyVerifyReport::answer)
        .def_readonly("formula", &PyVerifyReport::formula)
        .def_readonly("consistent", &PyVerifyReport::consistent)
        .def("__repr__", [](const PyVerifyReport& r) {
            return std::string("<VerifyReport answer=") + (r.answer ? "yes" : "no") +
                   " formula=" + (r.formula ? "true" : "false") +
                   " consistent=" + (r.consistent ? "yes" : "no") + ">";
        });

    m.def("verify",
          [](const TmSpec& tm, const std::string& word) {
              ReductionOutput out = build_psi(tm, parse_word(tm, word));
              const bool answer = out.machine_run.accepted;
              const bool holds = eval_lasso(out.model, out.run, out.psi);
              return PyVerifyReport{answer, holds, answer == holds};
          },
          py::arg("tm"), py::arg("word"));
}
