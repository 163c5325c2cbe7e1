#include "ltlkit/reduction.hpp"

#include "ltlkit/errors.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace ltlkit {

Layout make_layout(const TmSpec& tm, int input_len) {
    Layout layout;
    layout.n1 = tm.state_count();
    layout.n2 = tm.symbol_count();
    layout.k = layout.n2 * (layout.n1 + 1);
    layout.space = space_bound(tm, input_len);
    return layout;
}

int symbol_index(const TmSpec& tm, CellContent content) {
    const int n2 = tm.symbol_count();
    if (content.symbol < 0 || content.symbol >= n2)
        throw std::invalid_argument("unknown symbol");
    if (!content.is_pair()) return content.symbol + 1;
    if (content.state >= tm.state_count()) throw std::invalid_argument("unknown state");
    return n2 + content.state * n2 + content.symbol + 1;
}

CellContent content_of_index(const TmSpec& tm, int index) {
    const int n2 = tm.symbol_count();
    const int k = n2 * (tm.state_count() + 1);
    if (index < 1 || index > k) throw std::invalid_argument("cell index out of range");
    if (index <= n2) return CellContent::plain(index - 1);
    int rest = index - n2 - 1;
    return CellContent::pair(rest / n2, rest % n2);
}

KripkeModel build_model(const TmSpec& tm, const Layout& layout) {
    if (layout.n1 != tm.state_count() || layout.n2 != tm.symbol_count() ||
        layout.k != layout.n2 * (layout.n1 + 1) || layout.space < 1)
        throw std::invalid_argument("layout does not match machine");
    const int k = layout.k;
    const int space = layout.space;
    KripkeModel model(layout.state_total());

    // Marker block: three p-states in a row.
    for (int i = 0; i < 3; ++i) {
        model.set_true(1, i);
        model.set_name(i, "B." + std::to_string(i));
    }
    model.add_edge(0, 1);
    model.add_edge(1, 2);

    auto block_base = [&](int j) { return 3 + (j - 1) * (2 + k * k); };
    auto chain_state = [&](int j, int m, int i) { return block_base(j) + 1 + (m - 1) * k + (i - 1); };

    for (int j = 1; j <= space; ++j) {
        const int entry = block_base(j);          // s0 of cell j
        const int exit = block_base(j) + 1 + k * k;  // s1 of cell j
        model.set_name(entry, "C[" + std::to_string(j) + "].s0");
        model.set_name(exit, "C[" + std::to_string(j) + "].s1");
        for (int m = 1; m <= k; ++m) {
            model.add_edge(entry, chain_state(j, m, 1));
            for (int i = 1; i < k; ++i) model.add_edge(chain_state(j, m, i), chain_state(j, m, i + 1));
            model.add_edge(chain_state(j, m, k), exit);
            // p true exactly at the m-th state of chain m.
            model.set_true(1, chain_state(j, m, m));
            for (int i = 1; i <= k; ++i)
                model.set_name(chain_state(j, m, i), "C[" + std::to_string(j) + "].N[" +
                                                         std::to_string(m) + "]." + std::to_string(i));
        }
        if (j < space) model.add_edge(exit, block_base(j + 1));
    }
    model.add_edge(2, block_base(1));
    model.add_edge(block_base(space) + 1 + k * k, 0);  // cycle back edge
    return model;
}

Formula sym_formula(const Layout& layout, int j, int i) {
    if (j < 1 || j > layout.space) throw std::invalid_argument("cell out of range");
    if (i < 1 || i > layout.k) throw std::invalid_argument("cell content index out of range");
    const Formula p = Formula::var(1);
    const std::size_t base = static_cast<std::size_t>(layout.offset(j));
    std::vector<Formula> terms;
    terms.reserve(static_cast<std::size_t>(layout.k));
    terms.push_back(Formula::next_power(base + static_cast<std::size_t>(i), p));
    for (int other = 1; other <= layout.k; ++other) {
        if (other == i) continue;
        terms.push_back(Formula::neg(Formula::next_power(base + static_cast<std::size_t>(other), p)));
    }
    return Formula::conj_all(terms);
}

Formula begin_marker() {
    const Formula p = Formula::var(1);
    return Formula::conj_all({p, Formula::next(p), Formula::next(Formula::next(p))});
}

namespace {

std::vector<CellContent> config_contents(const TmConfig& config) {
    std::vector<CellContent> contents;
    contents.reserve(config.tape.size());
    for (std::size_t j = 0; j < config.tape.size(); ++j) {
        if (static_cast<int>(j) + 1 == config.head)
            contents.push_back(CellContent::pair(config.state, config.tape[j]));
        else
            contents.push_back(CellContent::plain(config.tape[j]));
    }
    return contents;
}

}  // namespace

Formula build_psi_start(const TmSpec& tm, const std::vector<int>& input, const Layout& layout) {
    std::vector<Formula> terms;
    terms.push_back(begin_marker());
    for (int j = 1; j <= layout.space; ++j) {
        CellContent content;
        if (j == 1)
            content = CellContent::pair(tm.start, tm.left_marker);
        else if (j - 2 < static_cast<int>(input.size()))
            content = CellContent::plain(input[static_cast<std::size_t>(j - 2)]);
        else
            content = CellContent::plain(tm.blank);
        terms.push_back(sym_formula(layout, j, symbol_index(tm, content)));
    }
    return Formula::conj_all(terms);
}

Formula build_psi_positive(const TmSpec& tm, const Layout& layout) {
    std::vector<Formula> terms;
    terms.push_back(begin_marker());
    terms.push_back(sym_formula(layout, 1, symbol_index(tm, CellContent::pair(tm.final_state, tm.blank))));
    for (int j = 2; j <= layout.space; ++j)
        terms.push_back(sym_formula(layout, j, symbol_index(tm, CellContent::plain(tm.blank))));
    return Formula::conj_all(terms);
}

namespace {

// Next content of the window's centre cell.  A pair steps by its rule; a
// plain cell acquires the head when a neighbouring pair moves onto it.
int window_successor(const TmSpec& tm, const CellContent* left, const CellContent& centre,
                     const CellContent* right) {
    if (centre.is_pair()) {
        const TmRule* rule = tm.rule_for(centre.state, centre.symbol);
        if (!rule) throw SemanticError("no rule applies (validation gap)");
        if (rule->move == Move::Stay)
            return symbol_index(tm, CellContent::pair(rule->next_state, rule->write));
        return symbol_index(tm, CellContent::plain(rule->write));
    }
    if (left && left->is_pair()) {
        const TmRule* rule = tm.rule_for(left->state, left->symbol);
        if (!rule) throw SemanticError("no rule applies (validation gap)");
        if (rule->move == Move::Right)
            return symbol_index(tm, CellContent::pair(rule->next_state, centre.symbol));
    }
    if (right && right->is_pair()) {
        const TmRule* rule = tm.rule_for(right->state, right->symbol);
        if (!rule) throw SemanticError("no rule applies (validation gap)");
        if (rule->move == Move::Left)
            return symbol_index(tm, CellContent::pair(rule->next_state, centre.symbol));
    }
    return symbol_index(tm, centre);
}

}  // namespace

Formula build_psi_delta(const TmSpec& tm, const Layout& layout) {
    const int k = layout.k;
    const int space = layout.space;
    const std::size_t cycle = static_cast<std::size_t>(layout.cycle_length());
    const Formula begin = begin_marker();

    std::vector<Formula> conjuncts;
    conjuncts.push_back(Formula::next_power(cycle, begin));

    // One implication per cell and realizable neighbourhood: if this cycle
    // reads the window, the next cycle reads the successor content.  A
    // window is realizable when at most one of its cells carries the head.
    for (int j = 1; j <= space; ++j) {
        const bool has_left = j > 1;
        const bool has_right = j < space;
        const int left_count = has_left ? k : 1;
        const int right_count = has_right ? k : 1;
        for (int lc = 1; lc <= left_count; ++lc) {
            for (int cc = 1; cc <= k; ++cc) {
                for (int rc = 1; rc <= right_count; ++rc) {
                    CellContent left{}, centre = content_of_index(tm, cc), right{};
                    int pairs = centre.is_pair() ? 1 : 0;
                    if (has_left) {
                        left = content_of_index(tm, lc);
                        pairs += left.is_pair() ? 1 : 0;
                    }
                    if (has_right) {
                        right = content_of_index(tm, rc);
                        pairs += right.is_pair() ? 1 : 0;
                    }
                    if (pairs > 1) continue;

                    std::vector<Formula> guard_terms;
                    if (has_left) guard_terms.push_back(sym_formula(layout, j - 1, lc));
                    guard_terms.push_back(sym_formula(layout, j, cc));
                    if (has_right) guard_terms.push_back(sym_formula(layout, j + 1, rc));

                    const int next_content = window_successor(
                        tm, has_left ? &left : nullptr, centre, has_right ? &right : nullptr);
                    conjuncts.push_back(Formula::implies(
                        Formula::conj_all(guard_terms),
                        Formula::next_power(cycle, sym_formula(layout, j, next_content))));
                }
            }
        }
    }
    return Formula::implies(begin, Formula::conj_all(conjuncts));
}

LassoPath run_lasso(const RunResult& run, const TmSpec& tm, const Layout& layout) {
    const int k = layout.k;
    auto block_base = [&](int j) { return 3 + (j - 1) * (2 + k * k); };

    auto walk_config = [&](const TmConfig& config, std::vector<int>& out) {
        out.push_back(0);
        out.push_back(1);
        out.push_back(2);
        const auto contents = config_contents(config);
        for (int j = 1; j <= layout.space; ++j) {
            const int m = symbol_index(tm, contents[static_cast<std::size_t>(j - 1)]);
            out.push_back(block_base(j));  // s0
            for (int i = 1; i <= k; ++i) out.push_back(block_base(j) + 1 + (m - 1) * k + (i - 1));
            out.push_back(block_base(j) + 1 + k * k);  // s1
        }
    };

    LassoPath path;
    for (std::size_t t = 0; t < run.cycle_start; ++t) walk_config(run.trace[t], path.prefix);
    for (std::size_t t = run.cycle_start; t < run.trace.size(); ++t) walk_config(run.trace[t], path.loop);
    return path;
}

ReductionOutput build_psi(const TmSpec& tm, const std::vector<int>& input) {
    if (auto r = validate_tm(tm); !r.ok) throw SemanticError("invalid machine: " + r.joined());

    const Layout layout = make_layout(tm, static_cast<int>(input.size()));
    RunResult run = simulate(tm, input);

    ReductionOutput out{
        layout,
        build_model(tm, layout),
        run_lasso(run, tm, layout),
        std::move(run),
        build_psi_start(tm, input, layout),
        build_psi_delta(tm, layout),
        build_psi_positive(tm, layout),
        Formula::falsum(),
    };
    out.psi = Formula::implies(Formula::conj(out.psi_start, Formula::always(out.psi_delta)),
                               Formula::eventually(out.psi_positive));

    if (count_vars(out.psi) != 1) throw std::logic_error("reduction formula must use one variable");
    if (auto r = validate_model(out.model); !r.ok)
        throw std::logic_error("generated model invalid: " + r.joined());
    if (auto r = validate_path(out.model, out.run); !r.ok)
        throw std::logic_error("generated run path invalid: " + r.joined());
    return out;
}

std::string write_layout_file(const Layout& layout) {
    std::ostringstream out;
    out << "n1 " << layout.n1 << "\n";
    out << "n2 " << layout.n2 << "\n";
    out << "k " << layout.k << "\n";
    out << "S " << layout.space << "\n";
    out << "L " << layout.cycle_length() << "\n";
    for (int j = 1; j <= layout.space; ++j) out << "off " << j << " " << layout.offset(j) << "\n";
    return out.str();
}

}  // namespace ltlkit
