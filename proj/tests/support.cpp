#include "support.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace testsupport {

using namespace ltlkit;

namespace {

TmRule rule(int q, int a, int q2, int a2, Move m) { return TmRule{q, a, q2, a2, m}; }

}  // namespace

TmSpec t_yes(long long space_constant) {
    TmSpec tm;
    tm.states = {"q0", "q1"};
    tm.alphabet = {"a0", "a1"};
    tm.start = 0;
    tm.final_state = 1;
    tm.blank = 0;
    tm.left_marker = 1;
    tm.space_poly = {space_constant};
    tm.rules = {
        rule(0, 1, 1, 0, Move::Stay),  // q0 on marker: erase, accept
        rule(0, 0, 0, 0, Move::Stay),  // unreachable spin, keeps the program total
        rule(1, 0, 1, 0, Move::Stay),
        rule(1, 1, 1, 1, Move::Stay),
    };
    return tm;
}

TmSpec t_loop() {
    TmSpec tm;
    tm.states = {"q0", "q1"};
    tm.alphabet = {"a0", "a1"};
    tm.start = 0;
    tm.final_state = 1;
    tm.blank = 0;
    tm.left_marker = 1;
    tm.space_poly = {2};
    tm.rules = {
        rule(0, 1, 0, 1, Move::Right),
        rule(0, 0, 0, 0, Move::Left),
        rule(1, 0, 1, 0, Move::Stay),
        rule(1, 1, 1, 1, Move::Stay),
    };
    return tm;
}

TmSpec t_parity() {
    TmSpec tm;
    tm.states = {"qe", "qo", "qb", "qacc"};
    tm.alphabet = {"a0", "m", "1"};
    tm.start = 0;
    tm.final_state = 3;
    tm.blank = 0;
    tm.left_marker = 1;
    tm.space_poly = {2, 1};
    const int qe = 0, qo = 1, qb = 2, qacc = 3;
    const int a0 = 0, m = 1, one = 2;
    tm.rules = {
        rule(qe, m, qe, m, Move::Right),     // leave the marker, start the sweep
        rule(qe, one, qo, a0, Move::Right),  // erase a 1, flip parity
        rule(qe, a0, qb, a0, Move::Left),    // end of input on even parity: walk back
        rule(qo, one, qe, a0, Move::Right),
        rule(qo, a0, qo, a0, Move::Stay),    // odd parity: spin (reject)
        rule(qo, m, qo, m, Move::Stay),      // unreachable
        rule(qb, a0, qb, a0, Move::Left),
        rule(qb, m, qacc, a0, Move::Stay),   // erase the marker, accept at cell 1
        rule(qb, one, qb, one, Move::Stay),  // unreachable
        rule(qacc, a0, qacc, a0, Move::Stay),
        rule(qacc, m, qacc, m, Move::Stay),
        rule(qacc, one, qacc, one, Move::Stay),
    };
    return tm;
}

RandomInstance random_instance(std::mt19937& rng, int max_states, int max_positions, int num_vars) {
    std::uniform_int_distribution<int> state_count(1, max_states);
    const int n = state_count(rng);
    KripkeModel model(n);
    for (int s = 0; s < n; ++s) model.add_edge(s, (s + 1) % n);  // serial backbone
    std::uniform_int_distribution<int> state(0, n - 1);
    std::uniform_int_distribution<int> extra_edges(0, 2 * n);
    for (int e = extra_edges(rng); e > 0; --e) model.add_edge(state(rng), state(rng));
    std::uniform_int_distribution<int> coin(0, 1);
    for (int var = 1; var <= num_vars; ++var)
        for (int s = 0; s < n; ++s)
            if (coin(rng)) model.set_true(var, s);

    std::uniform_int_distribution<int> total_positions(1, max_positions);
    const int positions = total_positions(rng);
    std::vector<int> walk{state(rng)};
    while (static_cast<int>(walk.size()) < positions) {
        const auto& succ = model.successors(walk.back());
        std::uniform_int_distribution<std::size_t> pick(0, succ.size() - 1);
        walk.push_back(succ[pick(rng)]);
    }
    std::uniform_int_distribution<int> split(0, positions - 1);
    const int loop_start = split(rng);
    LassoPath path;
    path.prefix.assign(walk.begin(), walk.begin() + loop_start);
    path.loop.assign(walk.begin() + loop_start, walk.end());
    model.add_edge(path.loop.back(), path.loop.front());  // close the lasso
    return RandomInstance{std::move(model), std::move(path)};
}

Formula random_formula(std::mt19937& rng, int max_nodes, int num_vars) {
    std::uniform_int_distribution<int> budget_dist(1, max_nodes);
    const int budget = budget_dist(rng);

    std::function<Formula(int)> gen = [&](int nodes) -> Formula {
        if (nodes <= 1) {
            if (num_vars > 0) {
                std::uniform_int_distribution<int> leaf(0, num_vars);
                int pick = leaf(rng);
                if (pick > 0) return Formula::var(pick);
            }
            return Formula::falsum();
        }
        std::uniform_int_distribution<int> op(nodes >= 3 ? 0 : 1, 1);
        if (op(rng) == 1) return Formula::next(gen(nodes - 1));
        std::uniform_int_distribution<int> split(1, nodes - 2);
        const int left = split(rng);
        std::uniform_int_distribution<int> which(0, 1);
        Formula a = gen(left);
        Formula b = gen(nodes - 1 - left);
        return which(rng) == 0 ? Formula::implies(a, b) : Formula::until(a, b);
    };
    return gen(budget);
}

bool stabilize_eval(const KripkeModel& model, const LassoPath& path, Formula f) {
    const std::size_t window = path.window();
    const std::size_t loop_start = path.prefix.size();
    auto succ = [&](std::size_t i) { return i + 1 < window ? i + 1 : loop_start; };

    std::unordered_map<std::uint32_t, std::vector<bool>> rows;
    for (Formula g : closure(f)) {
        std::vector<bool> row(window, false);
        switch (g.kind()) {
            case FormulaKind::Falsum:
                break;
            case FormulaKind::Var:
                for (std::size_t i = 0; i < window; ++i)
                    row[i] = model.holds(g.var_index(), path.at(i));
                break;
            case FormulaKind::Implies: {
                const auto& a = rows.at(g.lhs().id());
                const auto& b = rows.at(g.rhs().id());
                for (std::size_t i = 0; i < window; ++i) row[i] = !a[i] || b[i];
                break;
            }
            case FormulaKind::Next: {
                const auto& a = rows.at(g.body().id());
                for (std::size_t i = 0; i < window; ++i) row[i] = a[succ(i)];
                break;
            }
            case FormulaKind::Until: {
                const auto& a = rows.at(g.lhs().id());
                const auto& b = rows.at(g.rhs().id());
                // Least fixpoint by repeated sweeps from all-false.
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (std::size_t i = window; i-- > 0;) {
                        bool v = b[i] || (a[i] && row[succ(i)]);
                        if (v != row[i]) {
                            row[i] = v;
                            changed = true;
                        }
                    }
                }
                break;
            }
        }
        rows.emplace(g.id(), std::move(row));
    }
    return rows.at(f.id())[0];
}

std::vector<Formula> enumerate_formulas(int max_nodes, const std::vector<Formula>& leaves) {
    std::vector<std::vector<Formula>> by_size(static_cast<std::size_t>(max_nodes) + 1);
    if (max_nodes >= 1) by_size[1] = leaves;
    for (int n = 2; n <= max_nodes; ++n) {
        for (Formula f : by_size[static_cast<std::size_t>(n - 1)])
            by_size[static_cast<std::size_t>(n)].push_back(Formula::next(f));
        for (int left = 1; left <= n - 2; ++left)
            for (Formula a : by_size[static_cast<std::size_t>(left)])
                for (Formula b : by_size[static_cast<std::size_t>(n - 1 - left)]) {
                    by_size[static_cast<std::size_t>(n)].push_back(Formula::implies(a, b));
                    by_size[static_cast<std::size_t>(n)].push_back(Formula::until(a, b));
                }
    }
    std::vector<Formula> all;
    for (const auto& bucket : by_size) all.insert(all.end(), bucket.begin(), bucket.end());
    return all;
}

std::vector<BoolLasso> all_bool_lassos(int max_positions) {
    std::vector<BoolLasso> out;
    for (int total = 1; total <= max_positions; ++total) {
        for (int prefix = 0; prefix < total; ++prefix) {
            for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
                BoolLasso w;
                w.prefix_len = static_cast<std::size_t>(prefix);
                for (int i = 0; i < total; ++i) w.bits.push_back((mask >> i) & 1);
                out.push_back(std::move(w));
            }
        }
    }
    return out;
}

bool word_sat(Formula f, const BoolLasso& word) {
    const std::size_t window = word.bits.size();
    const std::size_t prefix = word.prefix_len;
    const std::size_t loop = window - prefix;
    const std::size_t scan = prefix + 2 * loop;
    auto canon = [&](std::size_t pos) { return pos < window ? pos : prefix + (pos - prefix) % loop; };

    std::unordered_map<std::uint64_t, bool> memo;
    std::function<bool(Formula, std::size_t)> at = [&](Formula g, std::size_t pos) -> bool {
        pos = canon(pos);
        const std::uint64_t key = (static_cast<std::uint64_t>(g.id()) << 32) | pos;
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool value = false;
        switch (g.kind()) {
            case FormulaKind::Falsum: break;
            case FormulaKind::Var: value = g.var_index() == 1 && word.bits[pos]; break;
            case FormulaKind::Implies: value = !at(g.lhs(), pos) || at(g.rhs(), pos); break;
            case FormulaKind::Next: value = at(g.body(), pos + 1); break;
            case FormulaKind::Until:
                for (std::size_t d = 0; d < scan; ++d) {
                    if (at(g.rhs(), pos + d)) { value = true; break; }
                    if (!at(g.lhs(), pos + d)) break;
                }
                break;
        }
        memo.emplace(key, value);
        return value;
    };
    return at(f, 0);
}

RandomInstance word_to_instance(const BoolLasso& word) {
    const int n = static_cast<int>(word.bits.size());
    KripkeModel model(n);
    for (int i = 0; i + 1 < n; ++i) model.add_edge(i, i + 1);
    model.add_edge(n - 1, static_cast<int>(word.prefix_len));
    for (int i = 0; i < n; ++i)
        if (word.bits[static_cast<std::size_t>(i)]) model.set_true(1, i);
    LassoPath path;
    for (int i = 0; i < static_cast<int>(word.prefix_len); ++i) path.prefix.push_back(i);
    for (int i = static_cast<int>(word.prefix_len); i < n; ++i) path.loop.push_back(i);
    return RandomInstance{std::move(model), std::move(path)};
}

LassoPath advance(const LassoPath& path) {
    LassoPath out = path;
    if (!out.prefix.empty()) {
        out.prefix.erase(out.prefix.begin());
    } else {
        std::rotate(out.loop.begin(), out.loop.begin() + 1, out.loop.end());
    }
    return out;
}

LassoPath double_loop(const LassoPath& path) {
    LassoPath out = path;
    out.loop.insert(out.loop.end(), path.loop.begin(), path.loop.end());
    return out;
}

}  // namespace testsupport
