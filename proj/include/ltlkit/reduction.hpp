#pragma once

#include "ltlkit/formula.hpp"
#include "ltlkit/kripke.hpp"
#include "ltlkit/turing.hpp"

#include <string>
#include <vector>

namespace ltlkit {

// A cell of the work tape holds either a plain symbol or, where the head
// sits, a (state, symbol) pair.  `state` is -1 for plain cells.
struct CellContent {
    int symbol = 0;
    int state = -1;

    static CellContent plain(int symbol) { return {symbol, -1}; }
    static CellContent pair(int state, int symbol) { return {symbol, state}; }
    bool is_pair() const { return state >= 0; }

    bool operator==(const CellContent&) const = default;
};

// Geometry of the generated model: a marker block of three states followed
// by one block of k chains per tape cell.  One trip around the cycle is L
// positions long and spells out one machine configuration.
struct Layout {
    int n1 = 0;     // |Q|
    int n2 = 0;     // |Sigma|
    int k = 0;      // cell alphabet size, n2 * (n1 + 1)
    int space = 0;  // S, number of tape cells

    int cell_block() const { return k + 2; }
    // Position of the cell-j block entry on a cycle-start-anchored walk.
    int offset(int j) const { return 3 + (j - 1) * (k + 2); }
    int cycle_length() const { return 3 + space * (k + 2); }
    int state_total() const { return 3 + space * (2 + k * k); }
};

Layout make_layout(const TmSpec& tm, int input_len);

// 1..k index of a cell content: plain symbols first, then (state, symbol)
// pairs grouped by state.
int symbol_index(const TmSpec& tm, CellContent content);
CellContent content_of_index(const TmSpec& tm, int index);

// The cycle model: marker block (p true at all three states), then per cell
// a fan of k disjoint chains of length k with p true exactly at the m-th
// state of chain m, closed back to the marker block.
KripkeModel build_model(const TmSpec& tm, const Layout& layout);

// True on a cycle-start suffix iff the walk takes chain i in cell block j:
// X^(off(j)+i) p and the negation of every other anchor of that block.
Formula sym_formula(const Layout& layout, int j, int i);

// p & X p & X X p — the marker-block detector.
Formula begin_marker();

Formula build_psi_start(const TmSpec& tm, const std::vector<int>& input, const Layout& layout);
Formula build_psi_positive(const TmSpec& tm, const Layout& layout);
Formula build_psi_delta(const TmSpec& tm, const Layout& layout);

// The walk through the model that spells out the machine's run.
LassoPath run_lasso(const RunResult& run, const TmSpec& tm, const Layout& layout);

struct ReductionOutput {
    Layout layout;
    KripkeModel model;
    LassoPath run;
    RunResult machine_run;
    Formula psi_start;
    Formula psi_delta;
    Formula psi_positive;
    Formula psi;  // (psi_start & G psi_delta) -> F psi_positive
};

// Full pipeline: validate, simulate, build model, run path and formula.
ReductionOutput build_psi(const TmSpec& tm, const std::vector<int>& input);

// Line-oriented sidecar: n1, n2, k, S, L and the block offsets.
std::string write_layout_file(const Layout& layout);

}  // namespace ltlkit
