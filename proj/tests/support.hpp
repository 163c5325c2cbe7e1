#pragma once

#include "ltlkit/eval.hpp"
#include "ltlkit/formula.hpp"
#include "ltlkit/kripke.hpp"
#include "ltlkit/turing.hpp"

#include <cstddef>
#include <random>
#include <vector>

// Shared fixtures: the three reference machines, deterministic random
// instance generators, independent evaluation routes, and small exhaustive
// enumerators.  Everything here stays independent of the code paths it is
// used to check.
namespace testsupport {

// Immediate accepter: erases the marker and accepts on the first step.
// space_constant is the constant space polynomial [c].
ltlkit::TmSpec t_yes(long long space_constant = 2);

// Bounces the head between cells 1 and 2 forever; never accepts.
ltlkit::TmSpec t_loop();

// Accepts words over {1} with an even number of 1s via an erase-and-check
// sweep; space polynomial [2, 1].
ltlkit::TmSpec t_parity();

struct RandomInstance {
    ltlkit::KripkeModel model;
    ltlkit::LassoPath path;
};

// Serial model (cycle backbone plus random extra edges), random valuation
// over variables 1..num_vars, and a random walk closed into a lasso.
RandomInstance random_instance(std::mt19937& rng, int max_states, int max_positions, int num_vars);

// Uniform-ish random primitive AST with at most max_nodes nodes over
// variables 1..num_vars (plus falsum); num_vars == 0 gives closed formulas.
ltlkit::Formula random_formula(std::mt19937& rng, int max_nodes, int num_vars);

// Third evaluation route: per-subformula truth vectors where every Until row
// starts all-false and is swept to stabilization.
bool stabilize_eval(const ltlkit::KripkeModel& model, const ltlkit::LassoPath& path,
                    ltlkit::Formula f);

// All formulas with at most max_nodes AST nodes whose leaves come from
// `leaves`, built from {Implies, Next, Until}.
std::vector<ltlkit::Formula> enumerate_formulas(int max_nodes,
                                                const std::vector<ltlkit::Formula>& leaves);

// A single-variable ultimately periodic word: bit i is the truth of p at
// position i of the window.
struct BoolLasso {
    std::vector<bool> bits;
    std::size_t prefix_len = 0;

    std::size_t loop_len() const { return bits.size() - prefix_len; }
};

// Every boolean lasso with prefix+loop <= max_positions (loop nonempty).
std::vector<BoolLasso> all_bool_lassos(int max_positions);

// Word-level satisfaction of a one-variable formula, by direct recursion.
bool word_sat(ltlkit::Formula f, const BoolLasso& word);

// The word as a chain-plus-back-edge model with its canonical path.
RandomInstance word_to_instance(const BoolLasso& word);

// The lasso advanced by one position (for suffix-coherence checks).
ltlkit::LassoPath advance(const ltlkit::LassoPath& path);

// The lasso with its loop doubled.
ltlkit::LassoPath double_loop(const ltlkit::LassoPath& path);

}  // namespace testsupport
