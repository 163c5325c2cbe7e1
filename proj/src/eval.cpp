#include "ltlkit/eval.hpp"

#include "ltlkit/errors.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace ltlkit {

namespace {

void require_valid(const KripkeModel& model, const LassoPath& path) {
    if (auto r = validate_model(model); !r.ok) throw SemanticError("invalid model: " + r.joined());
    if (auto r = validate_path(model, path); !r.ok) throw SemanticError("invalid path: " + r.joined());
}

}  // namespace

TruthTable make_truth_table(const KripkeModel& model, const LassoPath& path, Formula f) {
    TruthTable table;
    table.members = closure(f);
    table.prefix_len = path.prefix.size();
    table.loop_len = path.loop.size();
    const std::size_t window = table.prefix_len + table.loop_len;
    const std::size_t loop_start = table.prefix_len;

    std::unordered_map<std::uint32_t, std::size_t> row_of;
    row_of.reserve(table.members.size());
    for (std::size_t i = 0; i < table.members.size(); ++i) row_of.emplace(table.members[i].id(), i);

    auto succ = [&](std::size_t i) { return i + 1 < window ? i + 1 : loop_start; };

    table.rows.resize(table.members.size());
    for (std::size_t m = 0; m < table.members.size(); ++m) {
        Formula g = table.members[m];
        std::vector<bool>& row = table.rows[m];
        row.assign(window, false);
        switch (g.kind()) {
            case FormulaKind::Falsum:
                break;
            case FormulaKind::Var: {
                const std::vector<bool>* bits = model.valuation(g.var_index());
                if (bits)
                    for (std::size_t i = 0; i < window; ++i)
                        row[i] = (*bits)[static_cast<std::size_t>(path.at(i))];
                break;
            }
            case FormulaKind::Implies: {
                const auto& a = table.rows[row_of.at(g.lhs().id())];
                const auto& b = table.rows[row_of.at(g.rhs().id())];
                for (std::size_t i = 0; i < window; ++i) row[i] = !a[i] || b[i];
                break;
            }
            case FormulaKind::Next: {
                const auto& a = table.rows[row_of.at(g.body().id())];
                for (std::size_t i = 0; i < window; ++i) row[i] = a[succ(i)];
                break;
            }
            case FormulaKind::Until: {
                const auto& a = table.rows[row_of.at(g.lhs().id())];
                const auto& b = table.rows[row_of.at(g.rhs().id())];
                // Two backward passes over the loop: the first seeds the
                // wrap with "false", the second reads the first's value at
                // the loop start.  One wrap-around is enough because a
                // fulfilling position repeats with the loop period.
                for (int pass = 0; pass < 2; ++pass)
                    for (std::size_t i = window; i-- > loop_start;)
                        row[i] = b[i] || (a[i] && row[succ(i)]);
                // One backward pass over the prefix.
                for (std::size_t i = loop_start; i-- > 0;)
                    row[i] = b[i] || (a[i] && row[i + 1]);
                break;
            }
        }
    }
    return table;
}

bool eval_lasso(const KripkeModel& model, const LassoPath& path, Formula f) {
    require_valid(model, path);
    TruthTable table = make_truth_table(model, path, f);
    return table.rows.back()[0];  // closure ends with f itself
}

bool oracle_eval(const KripkeModel& model, const LassoPath& path, Formula f) {
    require_valid(model, path);
    const std::size_t prefix_len = path.prefix.size();
    const std::size_t loop_len = path.loop.size();
    const std::size_t window = prefix_len + loop_len;
    const std::size_t scan_bound = prefix_len + 2 * loop_len;

    auto canon = [&](std::size_t pos) {
        return pos < window ? pos : prefix_len + (pos - prefix_len) % loop_len;
    };

    std::unordered_map<std::uint64_t, bool> memo;
    auto key = [&](Formula g, std::size_t pos) {
        return (static_cast<std::uint64_t>(g.id()) << 32) | static_cast<std::uint64_t>(pos);
    };

    std::function<bool(Formula, std::size_t)> at = [&](Formula g, std::size_t pos) -> bool {
        pos = canon(pos);
        auto it = memo.find(key(g, pos));
        if (it != memo.end()) return it->second;
        bool value = false;
        switch (g.kind()) {
            case FormulaKind::Falsum:
                value = false;
                break;
            case FormulaKind::Var:
                value = model.holds(g.var_index(), path.at(pos));
                break;
            case FormulaKind::Implies:
                value = !at(g.lhs(), pos) || at(g.rhs(), pos);
                break;
            case FormulaKind::Next:
                value = at(g.body(), pos + 1);
                break;
            case FormulaKind::Until: {
                // Scan forward; all subformula truth values repeat with the
                // loop period, so scan_bound positions decide the matter.
                for (std::size_t d = 0; d < scan_bound; ++d) {
                    if (at(g.rhs(), pos + d)) {
                        value = true;
                        break;
                    }
                    if (!at(g.lhs(), pos + d)) break;
                }
                break;
            }
        }
        memo.emplace(key(g, pos), value);
        return value;
    };
    return at(f, 0);
}

bool reduce_closed(Formula f) {
    std::unordered_map<std::uint32_t, bool> value;
    for (Formula g : closure(f)) {
        switch (g.kind()) {
            case FormulaKind::Var:
                throw std::invalid_argument("formula contains a variable: p" +
                                            std::to_string(g.var_index()));
            case FormulaKind::Falsum:
                value[g.id()] = false;
                break;
            case FormulaKind::Implies:
                value[g.id()] = !value.at(g.lhs().id()) || value.at(g.rhs().id());
                break;
            case FormulaKind::Next:
                value[g.id()] = value.at(g.body().id());
                break;
            case FormulaKind::Until:
                value[g.id()] = value.at(g.rhs().id());
                break;
        }
    }
    return value.at(f.id());
}

}  // namespace ltlkit
