#pragma once

#include "ltlkit/formula.hpp"
#include "ltlkit/kripke.hpp"

#include <cstdint>
#include <optional>

namespace ltlkit {

struct SatOptions {
    // Cap on atom constructions (completed or refuted candidate atoms).
    // Exceeding it yields Inconclusive, never a verdict.
    std::uint64_t atom_budget = std::uint64_t{1} << 20;
};

enum class SatOutcome { Satisfiable, Unsatisfiable, Inconclusive };

struct SatWitness {
    KripkeModel model;
    LassoPath path;
};

struct SatResult {
    SatOutcome outcome = SatOutcome::Inconclusive;
    std::optional<SatWitness> witness;  // present iff Satisfiable
    std::uint64_t atoms = 0;            // distinct atoms interned
    std::uint64_t constructions = 0;    // candidate atoms built (budget meter)

    bool satisfiable() const { return outcome == SatOutcome::Satisfiable; }
};

// Tableau-style decision procedure: atoms (maximally consistent subsets of
// the closure and its negations) are generated on the fly, keyed by the
// Next- and Until-obligations of their predecessor; the search looks for a
// reachable strongly connected component that fulfils every Until it
// asserts.  A Satisfiable verdict carries a model and lasso synthesized
// from the accepting atoms, re-verified through eval_lasso before being
// returned.
SatResult sat(Formula f, const SatOptions& options = {});

enum class ValidOutcome { Valid, NotValid, Inconclusive };

// f is valid iff !f is unsatisfiable.
ValidOutcome valid(Formula f, const SatOptions& options = {});

}  // namespace ltlkit
