#pragma once

#include "ltlkit/formula.hpp"
#include "ltlkit/kripke.hpp"

#include <vector>

namespace ltlkit {

// Truth of every closure member at every stored lasso position.  Row order
// follows closure(f); positions run 0 .. prefix+loop-1.
struct TruthTable {
    std::vector<Formula> members;
    std::vector<std::vector<bool>> rows;
    std::size_t prefix_len = 0;
    std::size_t loop_len = 0;

    bool value(std::size_t member, std::size_t position) const {
        return rows[member][position];
    }
};

// Bottom-up evaluation over the closure: one boolean vector per subformula,
// Next reads position i+1 with wrap from the last position to the loop
// start, Until is a backward pass over the prefix plus a two-pass backward
// fixpoint over the loop.
TruthTable make_truth_table(const KripkeModel& model, const LassoPath& path, Formula f);

// Truth of f at position 0 of the infinite unrolling of path.
// Throws SemanticError if model or path fail validation.
bool eval_lasso(const KripkeModel& model, const LassoPath& path, Formula f);

// Same semantics computed a structurally different way: memoized recursive
// descent on (position, subformula) with positions canonicalized into
// [0, prefix+loop), Until expanded by an explicit scan over at most
// prefix + 2*loop successive positions.  Cross-check for eval_lasso.
bool oracle_eval(const KripkeModel& model, const LassoPath& path, Formula f);

// Variable-free simplification: a single bottom-up pass mapping every
// subformula to a constant (X a ~> a, a U b ~> b, -> by truth table).
// Returns true for formulas equivalent to "true".  Linear in dag_size(f).
// Throws std::invalid_argument if f contains a variable.
bool reduce_closed(Formula f);

}  // namespace ltlkit
