#pragma once

#include "ltlkit/kripke.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ltlkit {

enum class Move : std::uint8_t { Left, Right, Stay };

struct TmRule {
    int state = 0;       // scanned (state, symbol) ...
    int symbol = 0;
    int next_state = 0;  // ... rewrites to (state', symbol') and moves
    int write = 0;
    Move move = Move::Stay;
};

// Deterministic space-bounded machine.  States and symbols are referred to
// by their position in the `states` / `alphabet` lists; `space_poly` holds
// coefficients c0..cd of the space bound S(n) = sum ci * n^i.
struct TmSpec {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    int start = 0;
    int final_state = 0;
    int blank = 0;
    int left_marker = 0;
    std::vector<TmRule> rules;
    std::vector<long long> space_poly;

    int state_count() const { return static_cast<int>(states.size()); }
    int symbol_count() const { return static_cast<int>(alphabet.size()); }

    // nullptr when no rule matches.
    const TmRule* rule_for(int state, int symbol) const;
};

// Invariants checked: determinism (one rule per (q,a)), totality of the
// program on non-final states, final-state rules of the shape
// (q1,a) -> (q1,a,S) for every a, and no left move on the marker symbol.
ValidationReport validate_tm(const TmSpec& tm);

// S(n); throws SemanticError when S(n) < n + 1 (marker plus input must fit).
int space_bound(const TmSpec& tm, int input_len);

// One full instantaneous description.  Cells are 1-based: head in 1..S,
// tape[i-1] is the content of cell i.  Cell 1 initially holds the marker.
struct TmConfig {
    int state = 0;
    int head = 1;
    std::vector<int> tape;

    bool operator==(const TmConfig&) const = default;
};

// The eventually-periodic run: configurations 0..cycle_start-1 are the
// prefix; cycle_start..end is the cycle (its last entry steps back to
// trace[cycle_start]).  answer is "yes" iff the accepting configuration
// (final state, head 1, all-blank tape) occurs in the trace.
struct RunResult {
    bool accepted = false;
    std::vector<TmConfig> trace;
    std::size_t cycle_start = 0;

    std::size_t prefix_length() const { return cycle_start; }
    std::size_t cycle_length() const { return trace.size() - cycle_start; }
};

// Runs tm on input (symbol indices, none equal to the marker) within
// S(|input|) cells until a configuration repeats.  Throws SemanticError on
// validation failures, inputs containing the marker, or a head leaving
// 1..S during the run.
RunResult simulate(const TmSpec& tm, const std::vector<int>& input);

// Maps a word like "11" onto alphabet indices by greedy longest-match of
// symbol names; throws SemanticError if the word cannot be segmented or
// uses the marker.
std::vector<int> parse_word(const TmSpec& tm, std::string_view word);

// ── Machine file format ────────────────────────────────────────────────────
// Line-oriented UTF-8, `#` starts a comment:
//   states <name>...
//   alphabet <name>...
//   start <q>        accept <q>       blank <a>       leftmarker <a>
//   space <c0> <c1> ...
//   rule <q> <a> <q'> <a'> <L|R|S>
// ────────────────────────────────────────────────────────────────────────────

TmSpec read_tm_file(std::string_view text);  // throws ParseError
std::string write_tm_file(const TmSpec& tm);

}  // namespace ltlkit
