#include "ltlkit/errors.hpp"
#include "ltlkit/eval.hpp"
#include "ltlkit/formula.hpp"
#include "ltlkit/kripke.hpp"
#include "ltlkit/reduction.hpp"
#include "ltlkit/sat.hpp"
#include "ltlkit/turing.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitSyntax = 2;
constexpr int kExitSemantic = 3;
constexpr int kExitInconclusive = 4;

class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& message) : std::runtime_error(message), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

std::string read_input(const std::string& path, bool& stdin_used) {
    if (path == "-") {
        if (stdin_used) throw CliError(kExitSyntax, "stdin ('-') may be used for only one input");
        stdin_used = true;
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(kExitSyntax, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError(kExitInternal, "cannot write '" + path + "'");
    out << content;
}

ltlkit::TmSpec load_tm(const std::string& path, bool& stdin_used) {
    ltlkit::TmSpec tm = ltlkit::read_tm_file(read_input(path, stdin_used));
    if (auto report = ltlkit::validate_tm(tm); !report.ok) {
        for (const auto& problem : report.problems) std::cerr << "machine: " << problem << "\n";
        throw CliError(kExitSemantic, "machine validation failed");
    }
    return tm;
}

int run(int argc, char** argv) {
    CLI::App app{"Linear-time temporal logic toolkit"};
    app.require_subcommand(1);

    std::string formula_path, model_path, tm_path, input_word;
    std::string witness_path, out_model, out_formula, out_layout;
    std::uint64_t atom_budget = ltlkit::SatOptions{}.atom_budget;

    auto* cmd_parse = app.add_subcommand("parse", "Parse a formula and print its canonical form");
    cmd_parse->add_option("file", formula_path, "formula file, or - for stdin")->required();

    auto* cmd_eval = app.add_subcommand("eval", "Evaluate a formula on a model's lasso path");
    cmd_eval->add_option("--model", model_path, "model file with a path line")->required();
    cmd_eval->add_option("--formula", formula_path, "formula file, or - for stdin")->required();

    auto* cmd_sat = app.add_subcommand("sat", "Decide satisfiability");
    cmd_sat->add_option("--formula", formula_path)->required();
    cmd_sat->add_option("--witness", witness_path, "write the witness model/path here");
    cmd_sat->add_option("--atom-budget", atom_budget, "cap on constructed tableau atoms");

    auto* cmd_valid = app.add_subcommand("valid", "Decide validity");
    cmd_valid->add_option("--formula", formula_path)->required();
    cmd_valid->add_option("--atom-budget", atom_budget);

    auto* cmd_reduce = app.add_subcommand("reduce", "Compile a machine run into model, path and formula");
    cmd_reduce->add_option("--tm", tm_path)->required();
    cmd_reduce->add_option("--input", input_word, "input word (may be empty)");
    cmd_reduce->add_option("--out-model", out_model)->required();
    cmd_reduce->add_option("--out-formula", out_formula)->required();
    cmd_reduce->add_option("--out-layout", out_layout);

    auto* cmd_verify = app.add_subcommand("verify", "Check the run/formula correspondence end to end");
    cmd_verify->add_option("--tm", tm_path)->required();
    cmd_verify->add_option("--input", input_word, "input word (may be empty)");

    CLI11_PARSE(app, argc, argv);

    bool stdin_used = false;

    if (cmd_parse->parsed()) {
        ltlkit::Formula f = ltlkit::parse(read_input(formula_path, stdin_used));
        std::cout << ltlkit::to_string(f) << "\n";
        return kExitOk;
    }

    if (cmd_eval->parsed()) {
        ltlkit::ModelFile mf = ltlkit::read_model_file(read_input(model_path, stdin_used));
        if (!mf.path) throw CliError(kExitSemantic, "model file has no 'path' line to evaluate on");
        ltlkit::Formula f = ltlkit::parse(read_input(formula_path, stdin_used));
        std::cout << (ltlkit::eval_lasso(mf.model, *mf.path, f) ? "true" : "false") << "\n";
        return kExitOk;
    }

    if (cmd_sat->parsed() || cmd_valid->parsed()) {
        ltlkit::Formula f = ltlkit::parse(read_input(formula_path, stdin_used));
        ltlkit::SatOptions options{atom_budget};
        if (cmd_valid->parsed()) {
            switch (ltlkit::valid(f, options)) {
                case ltlkit::ValidOutcome::Valid: std::cout << "valid\n"; return kExitOk;
                case ltlkit::ValidOutcome::NotValid: std::cout << "not-valid\n"; return kExitOk;
                case ltlkit::ValidOutcome::Inconclusive: break;
            }
            std::cout << "inconclusive\n";
            return kExitInconclusive;
        }
        ltlkit::SatResult result = ltlkit::sat(f, options);
        switch (result.outcome) {
            case ltlkit::SatOutcome::Satisfiable:
                std::cout << "sat\n";
                if (!witness_path.empty())
                    write_output(witness_path, ltlkit::write_model_file(result.witness->model,
                                                                        &result.witness->path));
                return kExitOk;
            case ltlkit::SatOutcome::Unsatisfiable:
                std::cout << "unsat\n";
                return kExitOk;
            case ltlkit::SatOutcome::Inconclusive:
                break;
        }
        std::cout << "inconclusive\n";
        return kExitInconclusive;
    }

    if (cmd_reduce->parsed()) {
        ltlkit::TmSpec tm = load_tm(tm_path, stdin_used);
        ltlkit::ReductionOutput out = ltlkit::build_psi(tm, ltlkit::parse_word(tm, input_word));
        write_output(out_model, ltlkit::write_model_file(out.model, &out.run));
        write_output(out_formula, ltlkit::to_string(out.psi) + "\n");
        if (!out_layout.empty()) write_output(out_layout, ltlkit::write_layout_file(out.layout));
        std::cerr << "states=" << out.model.state_count() << " cycle=" << out.layout.cycle_length()
                  << " psi_dag=" << ltlkit::dag_size(out.psi)
                  << " psi_tree=" << ltlkit::node_count(out.psi) << "\n";
        return kExitOk;
    }

    if (cmd_verify->parsed()) {
        ltlkit::TmSpec tm = load_tm(tm_path, stdin_used);
        ltlkit::ReductionOutput out = ltlkit::build_psi(tm, ltlkit::parse_word(tm, input_word));
        const bool answer = out.machine_run.accepted;
        const bool holds = ltlkit::eval_lasso(out.model, out.run, out.psi);
        const bool consistent = answer == holds;
        std::cout << "answer=" << (answer ? "yes" : "no") << " formula=" << (holds ? "true" : "false")
                  << " consistent=" << (consistent ? "yes" : "no") << "\n";
        return kExitOk;
    }

    return kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code();
    } catch (const ltlkit::ParseError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kExitSyntax;
    } catch (const ltlkit::SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
