#include "ltlkit/formula.hpp"

#include <deque>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ltlkit {

namespace {

struct Node {
    FormulaKind kind;
    int var;           // Var only
    std::uint32_t a;   // lhs / Next body
    std::uint32_t b;   // rhs
};

struct NodeKey {
    FormulaKind kind;
    int var;
    std::uint32_t a;
    std::uint32_t b;

    bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept {
        std::size_t h = static_cast<std::size_t>(k.kind);
        h = h * 1000003u ^ static_cast<std::size_t>(static_cast<unsigned>(k.var));
        h = h * 1000003u ^ k.a;
        h = h * 1000003u ^ k.b;
        return h;
    }
};

// Process-wide interning table.  Nodes are never freed; a deque keeps
// references stable while the table grows.
class Store {
public:
    static Store& instance() {
        static Store store;
        return store;
    }

    std::uint32_t intern(FormulaKind kind, int var, std::uint32_t a, std::uint32_t b) {
        NodeKey key{kind, var, a, b};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = index_.find(key);
        if (it != index_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back(Node{kind, var, a, b});
        index_.emplace(key, id);
        return id;
    }

    const Node& at(std::uint32_t id) const { return nodes_[id]; }

private:
    std::deque<Node> nodes_;
    std::unordered_map<NodeKey, std::uint32_t, NodeKeyHash> index_;
    std::mutex mutex_;
};

const Node& node_of(const Formula& f) { return Store::instance().at(f.id()); }

}  // namespace

struct FormulaAccess {
    static Formula wrap(std::uint32_t id) { return Formula(id); }
};

FormulaKind Formula::kind() const { return node_of(*this).kind; }

int Formula::var_index() const {
    const Node& n = node_of(*this);
    if (n.kind != FormulaKind::Var) throw std::logic_error("var_index on non-variable");
    return n.var;
}

Formula Formula::lhs() const {
    const Node& n = node_of(*this);
    if (n.kind != FormulaKind::Implies && n.kind != FormulaKind::Until)
        throw std::logic_error("lhs on non-binary formula");
    return FormulaAccess::wrap(n.a);
}

Formula Formula::rhs() const {
    const Node& n = node_of(*this);
    if (n.kind != FormulaKind::Implies && n.kind != FormulaKind::Until)
        throw std::logic_error("rhs on non-binary formula");
    return FormulaAccess::wrap(n.b);
}

Formula Formula::body() const {
    const Node& n = node_of(*this);
    if (n.kind != FormulaKind::Next) throw std::logic_error("body on non-Next formula");
    return FormulaAccess::wrap(n.a);
}

Formula Formula::var(int index) {
    if (index < 1) throw std::invalid_argument("variable index must be >= 1");
    return FormulaAccess::wrap(Store::instance().intern(FormulaKind::Var, index, 0, 0));
}

Formula Formula::falsum() {
    return FormulaAccess::wrap(Store::instance().intern(FormulaKind::Falsum, 0, 0, 0));
}

Formula Formula::implies(Formula a, Formula b) {
    return FormulaAccess::wrap(Store::instance().intern(FormulaKind::Implies, 0, a.id(), b.id()));
}

Formula Formula::next(Formula a) {
    return FormulaAccess::wrap(Store::instance().intern(FormulaKind::Next, 0, a.id(), 0));
}

Formula Formula::until(Formula a, Formula b) {
    return FormulaAccess::wrap(Store::instance().intern(FormulaKind::Until, 0, a.id(), b.id()));
}

Formula Formula::truth() { return implies(falsum(), falsum()); }

Formula Formula::neg(Formula a) { return implies(a, falsum()); }

Formula Formula::conj(Formula a, Formula b) { return neg(implies(a, neg(b))); }

Formula Formula::disj(Formula a, Formula b) { return implies(neg(a), b); }

Formula Formula::eventually(Formula a) { return until(truth(), a); }

Formula Formula::always(Formula a) { return neg(eventually(neg(a))); }

Formula Formula::next_power(std::size_t n, Formula f) {
    Formula out = f;
    for (std::size_t i = 0; i < n; ++i) out = next(out);
    return out;
}

Formula Formula::conj_all(const std::vector<Formula>& terms) {
    if (terms.empty()) return truth();
    Formula out = terms.back();
    for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) out = conj(*it, out);
    return out;
}

std::vector<Formula> closure(Formula f) {
    std::vector<Formula> out;
    std::unordered_set<std::uint32_t> done;
    // Explicit post-order stack; formula DAGs can be deep.
    std::vector<std::pair<Formula, bool>> stack;
    stack.emplace_back(f, false);
    while (!stack.empty()) {
        auto [g, expanded] = stack.back();
        stack.pop_back();
        if (done.contains(g.id())) continue;
        if (expanded) {
            done.insert(g.id());
            out.push_back(g);
            continue;
        }
        stack.emplace_back(g, true);
        switch (g.kind()) {
            case FormulaKind::Var:
            case FormulaKind::Falsum:
                break;
            case FormulaKind::Next:
                stack.emplace_back(g.body(), false);
                break;
            case FormulaKind::Implies:
            case FormulaKind::Until:
                // Push rhs first so lhs is visited first.
                stack.emplace_back(g.rhs(), false);
                stack.emplace_back(g.lhs(), false);
                break;
        }
    }
    return out;
}

int count_vars(Formula f) {
    std::set<int> seen;
    for (Formula g : closure(f))
        if (g.kind() == FormulaKind::Var) seen.insert(g.var_index());
    return static_cast<int>(seen.size());
}

std::uint64_t node_count(Formula f) {
    std::unordered_map<std::uint32_t, std::uint64_t> memo;
    std::uint64_t total = 0;
    for (Formula g : closure(f)) {
        std::uint64_t n = 1;
        switch (g.kind()) {
            case FormulaKind::Var:
            case FormulaKind::Falsum:
                break;
            case FormulaKind::Next:
                n += memo.at(g.body().id());
                break;
            case FormulaKind::Implies:
            case FormulaKind::Until:
                n += memo.at(g.lhs().id()) + memo.at(g.rhs().id());
                break;
        }
        memo[g.id()] = n;
        total = n;  // closure ends with f itself
    }
    return total;
}

std::size_t dag_size(Formula f) { return closure(f).size(); }

}  // namespace ltlkit
