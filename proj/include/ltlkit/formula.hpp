#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ltlkit {

// ── Formula ─────────────────────────────────────────────────────────────────
//
// Formulas are built from exactly five primitive node kinds:
//
//     Var(i)   — propositional variable p_i, i >= 1
//     Falsum   — the constant "false"
//     Implies  — lhs -> rhs
//     Next     — X body
//     Until    — lhs U rhs
//
// Everything else (true, !, &, |, F, G) is a builder that expands into
// primitives, so downstream case analyses only ever see five kinds.
//
// Nodes live in a process-wide interning table; structurally equal formulas
// share one node, so equality is O(1) and heavily shared terms (the Next
// towers of the machine encoding, for instance) stay compact.  A Formula is
// a 4-byte handle; copying is free.  Construction is guarded by a mutex;
// built formulas are immutable and safe to share across threads.
// ─────────────────────────────────────────────────────────────────────────────

enum class FormulaKind : std::uint8_t { Var, Falsum, Implies, Next, Until };

class Formula {
public:
    FormulaKind kind() const;

    // Var only.
    int var_index() const;
    // Implies/Until only.
    Formula lhs() const;
    Formula rhs() const;
    // Next only.
    Formula body() const;

    std::uint32_t id() const noexcept { return id_; }

    bool operator==(const Formula&) const = default;

    // Primitive constructors.
    static Formula var(int index);  // throws std::invalid_argument if index < 1
    static Formula falsum();
    static Formula implies(Formula a, Formula b);
    static Formula next(Formula a);
    static Formula until(Formula a, Formula b);

    // Derived connectives, expanded on construction.
    static Formula truth();                        // false -> false
    static Formula neg(Formula a);                 // a -> false
    static Formula conj(Formula a, Formula b);     // !(a -> !b)
    static Formula disj(Formula a, Formula b);     // !a -> b
    static Formula eventually(Formula a);          // true U a
    static Formula always(Formula a);              // !(true U !a)

    // X^n: n nested Next constructors around f.
    static Formula next_power(std::size_t n, Formula f);

    // Right-fold conjunction; the empty conjunction is truth().
    static Formula conj_all(const std::vector<Formula>& terms);

private:
    explicit Formula(std::uint32_t id) : id_(id) {}
    std::uint32_t id_;

    friend struct FormulaAccess;
};

// All subformulas of f (f included), each exactly once, in post-order of
// first occurrence: children always precede parents.
std::vector<Formula> closure(Formula f);

// Number of distinct variable indices occurring in f.
int count_vars(Formula f);

// Size of f read as a tree (nodes counted with multiplicity).
std::uint64_t node_count(Formula f);

// Size of f read as a shared-subterm DAG (distinct subformulas).
std::size_t dag_size(Formula f);

// Concrete syntax.  to_string() emits primitives with minimal parentheses;
// the only re-sugared token is "true" for (false -> false).  parse() accepts
// the full grammar including the derived tokens and `#` comments, and
// satisfies parse(to_string(f)) == f.
std::string to_string(Formula f);
Formula parse(std::string_view text);  // throws ParseError

}  // namespace ltlkit

template <>
struct std::hash<ltlkit::Formula> {
    std::size_t operator()(const ltlkit::Formula& f) const noexcept {
        return std::hash<std::uint32_t>{}(f.id());
    }
};
