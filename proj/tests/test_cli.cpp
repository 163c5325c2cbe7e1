#include "ltlkit/eval.hpp"
#include "ltlkit/kripke.hpp"
#include "ltlkit/reduction.hpp"
#include "ltlkit/turing.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

// Drives the installed binary end to end through a shell.  LTL_CLI_PATH is
// injected by the build.

namespace {

namespace fs = std::filesystem;

struct CommandResult {
    int exit_code = -1;
    std::string out;
};

CommandResult run_cli(const std::string& args, const std::string& stdin_text = {}) {
    fs::path dir = fs::temp_directory_path() / "ltlkit-cli-test";
    fs::create_directories(dir);
    fs::path in_file = dir / "stdin.txt";
    {
        std::ofstream out(in_file, std::ios::binary);
        out << stdin_text;
    }
    std::string command = std::string(LTL_CLI_PATH) + " " + args + " < " + in_file.string() +
                          " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CommandResult result;
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path scratch_file(const std::string& name, const std::string& content) {
    fs::path dir = fs::temp_directory_path() / "ltlkit-cli-test";
    fs::create_directories(dir);
    fs::path file = dir / name;
    std::ofstream out(file, std::ios::binary);
    out << content;
    return file;
}

std::string slurp(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("parse prints the canonical form") {
    auto r = run_cli("parse -", "F p & G p # comment\n");
    CHECK(r.exit_code == 0);
    ltlkit::Formula p = ltlkit::Formula::var(1);
    ltlkit::Formula expected =
        ltlkit::Formula::conj(ltlkit::Formula::eventually(p), ltlkit::Formula::always(p));
    CHECK(r.out == ltlkit::to_string(expected) + "\n");
    CHECK(ltlkit::parse(r.out) == expected);

    auto file = scratch_file("roundtrip.ltl", "p -> X p");
    auto r2 = run_cli("parse " + file.string());
    CHECK(r2.exit_code == 0);
    CHECK(r2.out == "p -> X p\n");
}

TEST_CASE("parse reports syntax errors with exit code 2") {
    auto r = run_cli("parse -", "p -> ");
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
}

TEST_CASE("eval answers true or false") {
    auto model = scratch_file("one.model", "states 1\nedge 0 0\nlabel p1 0\npath : 0\n");
    auto r = run_cli("eval --model " + model.string() + " --formula -", "G p");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "true\n");

    auto r2 = run_cli("eval --model " + model.string() + " --formula -", "X (p -> false)");
    CHECK(r2.out == "false\n");
}

TEST_CASE("eval needs a path and a serial model") {
    auto pathless = scratch_file("pathless.model", "states 1\nedge 0 0\n");
    CHECK(run_cli("eval --model " + pathless.string() + " --formula -", "p").exit_code == 3);

    auto broken = scratch_file("broken.model", "states 2\nedge 0 1\npath : 0 1\n");
    CHECK(run_cli("eval --model " + broken.string() + " --formula -", "p").exit_code == 3);
}

TEST_CASE("sat and valid verdicts") {
    CHECK(run_cli("sat --formula -", "p & !p").out == "unsat\n");
    CHECK(run_cli("sat --formula -", "true U false").out == "unsat\n");
    CHECK(run_cli("valid --formula -", "p -> p").out == "valid\n");
    CHECK(run_cli("valid --formula -", "p").out == "not-valid\n");

    auto r = run_cli("sat --formula -", "p & X ! p");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "sat\n");
}

TEST_CASE("sat writes a verifiable witness") {
    fs::path witness = fs::temp_directory_path() / "ltlkit-cli-test" / "witness.model";
    auto r = run_cli("sat --formula - --witness " + witness.string(), "p & X ! p");
    REQUIRE(r.out == "sat\n");
    ltlkit::ModelFile mf = ltlkit::read_model_file(slurp(witness));
    REQUIRE(mf.path.has_value());
    CHECK(ltlkit::eval_lasso(mf.model, *mf.path, ltlkit::parse("p & X ! p")));
}

TEST_CASE("a tiny atom budget is reported as inconclusive with exit 4") {
    auto r = run_cli("sat --formula - --atom-budget 2", "p U X X p");
    CHECK(r.exit_code == 4);
    CHECK(r.out == "inconclusive\n");
}

TEST_CASE("reduce emits re-readable, deterministic files") {
    auto tm_file = scratch_file("tyes.tm", ltlkit::write_tm_file(testsupport::t_yes()));
    fs::path dir = fs::temp_directory_path() / "ltlkit-cli-test";
    std::string outputs = " --out-model " + (dir / "m.model").string() +
                          " --out-formula " + (dir / "psi.ltl").string() +
                          " --out-layout " + (dir / "l.txt").string();
    auto r = run_cli("reduce --tm " + tm_file.string() + " --input \"\"" + outputs);
    REQUIRE(r.exit_code == 0);

    std::string model_text = slurp(dir / "m.model");
    std::string formula_text = slurp(dir / "psi.ltl");
    std::string layout_text = slurp(dir / "l.txt");

    ltlkit::ModelFile mf = ltlkit::read_model_file(model_text);
    REQUIRE(mf.path.has_value());
    ltlkit::Formula psi = ltlkit::parse(formula_text);

    ltlkit::ReductionOutput expected = ltlkit::build_psi(testsupport::t_yes(), {});
    CHECK(psi == expected.psi);
    CHECK(mf.path == expected.run);
    CHECK(layout_text == ltlkit::write_layout_file(expected.layout));

    auto again = run_cli("reduce --tm " + tm_file.string() + " --input \"\"" + outputs);
    REQUIRE(again.exit_code == 0);
    CHECK(slurp(dir / "m.model") == model_text);
    CHECK(slurp(dir / "psi.ltl") == formula_text);
    CHECK(slurp(dir / "l.txt") == layout_text);
}

TEST_CASE("verify prints the correspondence line") {
    auto tm_file = scratch_file("tyes.tm", ltlkit::write_tm_file(testsupport::t_yes()));
    auto r = run_cli("verify --tm " + tm_file.string() + " --input \"\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "answer=yes formula=true consistent=yes\n");

    auto parity = scratch_file("tparity.tm", ltlkit::write_tm_file(testsupport::t_parity()));
    CHECK(run_cli("verify --tm " + parity.string() + " --input 1").out ==
          "answer=no formula=false consistent=yes\n");
    CHECK(run_cli("verify --tm " + parity.string() + " --input 11").out ==
          "answer=yes formula=true consistent=yes\n");
}

TEST_CASE("invalid machines exit with 3, unreadable ones with 2") {
    auto bad = scratch_file("bad.tm",
                            "states q0 q1\nalphabet a0 a1\nstart q0\naccept q1\nblank a0\n"
                            "leftmarker a1\nspace 2\nrule q0 a1 q1 a0 S\n");  // not total
    CHECK(run_cli("verify --tm " + bad.string() + " --input \"\"").exit_code == 3);

    auto garbled = scratch_file("garbled.tm", "states q0\nwhat is this\n");
    CHECK(run_cli("verify --tm " + garbled.string() + " --input \"\"").exit_code == 2);

    CHECK(run_cli("eval --model /no/such/file --formula -", "p").exit_code == 2);
}
