#include "ltlkit/sat.hpp"

#include "ltlkit/eval.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace ltlkit {

namespace {

// ── Atom search ─────────────────────────────────────────────────────────────
//
// Closure members are indexed 0..n-1 in closure order.  An atom assigns a
// bit to every member subject to local coherence:
//
//     falsum          = 0
//     (a -> b)        = !a | b
//     (a U b) = 1     requires a | b
//     b = 1           requires (a U b) = 1
//
// The transition relation forces, for a successor B of A:
//
//     B[g]            = A[X g]            for every X g in the closure
//     B[a U b] = 1    when A[a U b] = 1 and A[b] = 0
//     B[a U b] = 0    when A[a U b] = 0 and A[a] = 1
//
// Completions of a forced partial assignment are enumerated by branching on
// unassigned bits in closure order, false first, with unit propagation over
// the rules above.  Every completed or refuted candidate counts against the
// atom budget.
// ─────────────────────────────────────────────────────────────────────────────

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
    std::size_t operator()(const Bits& bits) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint64_t w : bits) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

struct BudgetExceeded {};

class Search {
public:
    Search(Formula f, const SatOptions& options) : root_(f), options_(options) {
        members_ = closure(f);
        const std::size_t n = members_.size();
        index_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) index_.emplace(members_[i].id(), i);

        kind_.resize(n);
        lhs_.resize(n);
        rhs_.resize(n);
        watchers_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            Formula g = members_[i];
            kind_[i] = g.kind();
            switch (g.kind()) {
                case FormulaKind::Implies:
                case FormulaKind::Until:
                    lhs_[i] = index_.at(g.lhs().id());
                    rhs_[i] = index_.at(g.rhs().id());
                    watchers_[lhs_[i]].push_back(i);
                    watchers_[rhs_[i]].push_back(i);
                    watchers_[i].push_back(i);
                    break;
                case FormulaKind::Next:
                    lhs_[i] = index_.at(g.body().id());
                    break;
                case FormulaKind::Var:
                case FormulaKind::Falsum:
                    break;
            }
            if (g.kind() == FormulaKind::Until) untils_.push_back(i);
            if (g.kind() == FormulaKind::Next) nexts_.push_back(i);
        }
        words_ = (n + 63) / 64;
    }

    SatResult run() {
        SatResult result;
        try {
            bool found = search();
            result.outcome = found ? SatOutcome::Satisfiable : SatOutcome::Unsatisfiable;
            if (found) result.witness = synthesize();
        } catch (const BudgetExceeded&) {
            result.outcome = SatOutcome::Inconclusive;
        }
        result.atoms = atoms_.size();
        result.constructions = constructions_;
        return result;
    }

private:
    // ── Assignment state (reused across enumerations) ──────────────────────

    enum : std::uint8_t { kUnset = 2 };

    bool assign(std::size_t i, bool v) {
        if (value_[i] != kUnset) return value_[i] == static_cast<std::uint8_t>(v);
        value_[i] = static_cast<std::uint8_t>(v);
        trail_.push_back(i);
        queue_.push_back(i);
        return true;
    }

    // Re-examine one Implies/Until constraint; false on conflict.
    bool apply(std::size_t c) {
        const std::uint8_t x = value_[c];
        const std::uint8_t a = value_[lhs_[c]];
        const std::uint8_t b = value_[rhs_[c]];
        if (kind_[c] == FormulaKind::Implies) {
            if (a == 0 || b == 1) {
                if (!assign(c, true)) return false;
            } else if (a == 1 && b == 0) {
                if (!assign(c, false)) return false;
            }
            if (x == 0) {
                if (!assign(lhs_[c], true) || !assign(rhs_[c], false)) return false;
            } else if (x == 1) {
                if (a == 1 && !assign(rhs_[c], true)) return false;
                if (b == 0 && !assign(lhs_[c], false)) return false;
            }
        } else {  // Until: x -> (a | b), b -> x
            if (b == 1 && !assign(c, true)) return false;
            if (x == 0 && !assign(rhs_[c], false)) return false;
            if (x == 1 && b == 0 && !assign(lhs_[c], true)) return false;
            if (x == 1 && a == 0 && !assign(rhs_[c], true)) return false;
            if (a == 0 && b == 0 && !assign(c, false)) return false;
        }
        return true;
    }

    bool propagate() {
        while (!queue_.empty()) {
            std::size_t g = queue_.back();
            queue_.pop_back();
            for (std::size_t c : watchers_[g])
                if (!apply(c)) {
                    queue_.clear();
                    return false;
                }
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            value_[trail_.back()] = kUnset;
            trail_.pop_back();
        }
    }

    // Enumerate all atoms extending `forced`; calls sink(bits) for each.
    // Stops early when sink returns false.
    template <typename Sink>
    bool enumerate(const std::vector<std::pair<std::size_t, bool>>& forced, Sink&& sink) {
        const std::size_t n = members_.size();
        value_.assign(n, kUnset);
        trail_.clear();
        queue_.clear();

        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            if (kind_[i] == FormulaKind::Falsum) ok = assign(i, false);
        for (auto [i, v] : forced)
            if (ok) ok = assign(i, v);
        if (ok) ok = propagate();
        // Seed constraints whose children start out unassigned but already
        // determine something (nothing to do: apply() runs on assignment).
        if (!ok) {
            charge();
            return true;
        }
        return branch(std::forward<Sink>(sink));
    }

    template <typename Sink>
    bool branch(Sink&& sink) {
        std::size_t pick = members_.size();
        for (std::size_t i = 0; i < members_.size(); ++i)
            if (value_[i] == kUnset) {
                pick = i;
                break;
            }
        if (pick == members_.size()) {
            charge();
            Bits bits(words_, 0);
            for (std::size_t i = 0; i < members_.size(); ++i)
                if (value_[i] == 1) bits[i >> 6] |= std::uint64_t{1} << (i & 63);
            return sink(bits);
        }
        for (bool v : {false, true}) {  // deterministic: false branch first
            const std::size_t mark = trail_.size();
            bool ok = assign(pick, v) && propagate();
            if (ok) {
                if (!branch(sink)) return false;
            } else {
                charge();
            }
            undo_to(mark);
        }
        return true;
    }

    void charge() {
        if (++constructions_ > options_.atom_budget) throw BudgetExceeded{};
    }

    // ── Atom store ──────────────────────────────────────────────────────────

    std::uint32_t intern_atom(const Bits& bits) {
        auto it = atom_ids_.find(bits);
        if (it != atom_ids_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(atoms_.size());
        atoms_.push_back(bits);
        atom_ids_.emplace(atoms_.back(), id);
        return id;
    }

    bool atom_bit(std::uint32_t atom, std::size_t i) const {
        return (atoms_[atom][i >> 6] >> (i & 63)) & 1;
    }

    std::vector<std::pair<std::size_t, bool>> forced_by(std::uint32_t atom) const {
        std::vector<std::pair<std::size_t, bool>> forced;
        for (std::size_t x : nexts_) forced.emplace_back(lhs_[x], atom_bit(atom, x));
        for (std::size_t u : untils_) {
            const bool holds = atom_bit(atom, u);
            const bool now = atom_bit(atom, rhs_[u]);
            if (holds && !now) forced.emplace_back(u, true);
            if (!holds && atom_bit(atom, lhs_[u])) forced.emplace_back(u, false);
        }
        return forced;
    }

    const std::vector<std::uint32_t>& successors(std::uint32_t atom) {
        if (atom >= succ_.size()) succ_.resize(atom + 1);
        if (atom >= expanded_.size()) expanded_.resize(atom + 1, false);
        if (!expanded_[atom]) {
            expanded_[atom] = true;
            std::vector<std::uint32_t> list;
            enumerate(forced_by(atom), [&](const Bits& bits) {
                list.push_back(intern_atom(bits));
                return true;
            });
            succ_[atom] = std::move(list);
        }
        return succ_[atom];
    }

    bool has_self_loop(std::uint32_t atom) {
        const auto& list = successors(atom);
        return std::find(list.begin(), list.end(), atom) != list.end();
    }

    // ── Tarjan SCC over the implicit atom graph ─────────────────────────────
    //
    // Iterative; terminates as soon as a popped component fulfils every
    // Until it asserts (and is a cycle at all).  Components popped without
    // success can never reach an accepting cycle and stay dead.

    static constexpr std::uint32_t kNone = 0xffffffffu;

    bool search() {
        std::vector<std::uint32_t> roots;
        enumerate({{index_.at(root_.id()), true}}, [&](const Bits& bits) {
            roots.push_back(intern_atom(bits));
            return true;
        });
        for (std::uint32_t r : roots) {
            if (node_index(r) != kNone) continue;
            if (tarjan_from(r)) return true;
        }
        return false;
    }

    std::uint32_t node_index(std::uint32_t atom) {
        if (atom >= dfs_index_.size()) dfs_index_.resize(atom + 1, kNone);
        return dfs_index_[atom];
    }

    struct Frame {
        std::uint32_t atom;
        std::size_t next_child;
    };

    bool tarjan_from(std::uint32_t root) {
        std::vector<Frame> frames;
        push_node(root, kNone);
        frames.push_back({root, 0});

        while (!frames.empty()) {
            Frame& frame = frames.back();
            const auto& children = successors(frame.atom);
            if (frame.next_child < children.size()) {
                std::uint32_t child = children[frame.next_child++];
                if (node_index(child) == kNone) {
                    push_node(child, frame.atom);
                    frames.push_back({child, 0});
                } else if (on_stack_[child]) {
                    lowlink_[frame.atom] = std::min(lowlink_[frame.atom], dfs_index_[child]);
                }
                continue;
            }
            // frame.atom is finished.
            const std::uint32_t atom = frame.atom;
            frames.pop_back();
            if (!frames.empty())
                lowlink_[frames.back().atom] = std::min(lowlink_[frames.back().atom], lowlink_[atom]);
            if (lowlink_[atom] != dfs_index_[atom]) continue;

            // Pop one strongly connected component.
            std::vector<std::uint32_t> component;
            for (;;) {
                std::uint32_t top = scc_stack_.back();
                scc_stack_.pop_back();
                on_stack_[top] = false;
                component.push_back(top);
                if (top == atom) break;
            }
            if (accepting(component)) {
                std::sort(component.begin(), component.end(),
                          [&](std::uint32_t a, std::uint32_t b) { return dfs_index_[a] < dfs_index_[b]; });
                witness_component_ = std::move(component);
                return true;
            }
        }
        return false;
    }

    void push_node(std::uint32_t atom, std::uint32_t parent) {
        if (atom >= dfs_index_.size()) dfs_index_.resize(atom + 1, kNone);
        if (atom >= lowlink_.size()) lowlink_.resize(atom + 1, 0);
        if (atom >= on_stack_.size()) on_stack_.resize(atom + 1, false);
        if (atom >= parent_.size()) parent_.resize(atom + 1, kNone);
        dfs_index_[atom] = lowlink_[atom] = next_index_++;
        on_stack_[atom] = true;
        parent_[atom] = parent;
        scc_stack_.push_back(atom);
    }

    // Every Until asserted anywhere in the component must have its right
    // side asserted somewhere in the component, and the component must
    // contain a cycle.
    bool accepting(const std::vector<std::uint32_t>& component) {
        if (component.size() == 1 && !has_self_loop(component[0])) return false;
        for (std::size_t u : untils_) {
            bool asserted = false, fulfilled = false;
            for (std::uint32_t atom : component) {
                asserted |= atom_bit(atom, u);
                fulfilled |= atom_bit(atom, rhs_[u]);
            }
            if (asserted && !fulfilled) return false;
        }
        return true;
    }

    // ── Witness synthesis ───────────────────────────────────────────────────

    std::vector<std::uint32_t> shortest_walk(std::uint32_t from, std::uint32_t to,
                                             const std::vector<std::uint32_t>& component) {
        // BFS inside the component; both ends are members.
        std::unordered_map<std::uint32_t, std::uint32_t> came_from;
        std::queue<std::uint32_t> frontier;
        frontier.push(from);
        came_from.emplace(from, kNone);
        while (!frontier.empty()) {
            std::uint32_t at = frontier.front();
            frontier.pop();
            for (std::uint32_t next : successors(at)) {
                if (std::find(component.begin(), component.end(), next) == component.end()) continue;
                if (came_from.contains(next)) continue;
                came_from.emplace(next, at);
                if (next == to) {
                    std::vector<std::uint32_t> walk{to};
                    for (std::uint32_t it = at; it != kNone; it = came_from.at(it)) walk.push_back(it);
                    std::reverse(walk.begin(), walk.end());
                    return walk;
                }
                frontier.push(next);
            }
        }
        throw std::logic_error("strongly connected component is not connected");
    }

    SatWitness synthesize() {
        const auto& component = witness_component_;

        // Loop: a closed walk visiting every component member, so every
        // Until asserted on the loop is fulfilled on the loop.
        std::vector<std::uint32_t> loop_atoms;
        if (component.size() == 1) {
            loop_atoms.push_back(component[0]);
        } else {
            loop_atoms.push_back(component[0]);
            for (std::size_t i = 0; i + 1 <= component.size(); ++i) {
                std::uint32_t from = component[i % component.size()];
                std::uint32_t to = component[(i + 1) % component.size()];
                auto hop = shortest_walk(from, to, component);
                loop_atoms.insert(loop_atoms.end(), hop.begin() + 1, hop.end());
            }
            loop_atoms.pop_back();  // final return to component[0] becomes the wrap
        }

        // Prefix: DFS tree path from the enumeration root to the loop head.
        std::vector<std::uint32_t> prefix_atoms;
        for (std::uint32_t at = parent_[component[0]]; at != kNone; at = parent_[at])
            prefix_atoms.push_back(at);
        std::reverse(prefix_atoms.begin(), prefix_atoms.end());

        // One model state per distinct atom, numbered by first occurrence.
        std::unordered_map<std::uint32_t, int> state_of;
        std::vector<std::uint32_t> order;
        auto state_for = [&](std::uint32_t atom) {
            auto it = state_of.find(atom);
            if (it != state_of.end()) return it->second;
            int s = static_cast<int>(order.size());
            state_of.emplace(atom, s);
            order.push_back(atom);
            return s;
        };
        LassoPath path;
        for (std::uint32_t a : prefix_atoms) path.prefix.push_back(state_for(a));
        for (std::uint32_t a : loop_atoms) path.loop.push_back(state_for(a));

        KripkeModel model(static_cast<int>(order.size()));
        for (std::size_t i = 0; i + 1 < path.prefix.size(); ++i)
            model.add_edge(path.prefix[i], path.prefix[i + 1]);
        if (!path.prefix.empty()) model.add_edge(path.prefix.back(), path.loop.front());
        for (std::size_t i = 0; i + 1 < path.loop.size(); ++i)
            model.add_edge(path.loop[i], path.loop[i + 1]);
        model.add_edge(path.loop.back(), path.loop.front());
        for (std::size_t m = 0; m < members_.size(); ++m) {
            if (kind_[m] != FormulaKind::Var) continue;
            const int var = members_[m].var_index();
            for (std::size_t s = 0; s < order.size(); ++s)
                if (atom_bit(order[s], m)) model.set_true(var, static_cast<int>(s));
        }

        if (!eval_lasso(model, path, root_)) throw std::logic_error("witness failed verification");
        return SatWitness{std::move(model), std::move(path)};
    }

    // ── Data ────────────────────────────────────────────────────────────────

    Formula root_;
    SatOptions options_;

    std::vector<Formula> members_;
    std::unordered_map<std::uint32_t, std::size_t> index_;
    std::vector<FormulaKind> kind_;
    std::vector<std::size_t> lhs_, rhs_;
    std::vector<std::vector<std::size_t>> watchers_;
    std::vector<std::size_t> untils_, nexts_;
    std::size_t words_ = 0;

    std::vector<std::uint8_t> value_;
    std::vector<std::size_t> trail_;
    std::vector<std::size_t> queue_;

    std::deque<Bits> atoms_;
    std::unordered_map<Bits, std::uint32_t, BitsHash> atom_ids_;
    std::vector<std::vector<std::uint32_t>> succ_;
    std::vector<bool> expanded_;
    std::uint64_t constructions_ = 0;

    std::vector<std::uint32_t> dfs_index_, lowlink_, parent_;
    std::vector<bool> on_stack_;
    std::vector<std::uint32_t> scc_stack_;
    std::uint32_t next_index_ = 0;
    std::vector<std::uint32_t> witness_component_;
};

}  // namespace

SatResult sat(Formula f, const SatOptions& options) { return Search(f, options).run(); }

ValidOutcome valid(Formula f, const SatOptions& options) {
    SatResult r = sat(Formula::neg(f), options);
    switch (r.outcome) {
        case SatOutcome::Unsatisfiable: return ValidOutcome::Valid;
        case SatOutcome::Satisfiable: return ValidOutcome::NotValid;
        case SatOutcome::Inconclusive: break;
    }
    return ValidOutcome::Inconclusive;
}

}  // namespace ltlkit
