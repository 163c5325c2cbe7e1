#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ltlkit {

// Finite serial Kripke model.  States are dense integers 0..state_count-1;
// optional per-state names are diagnostics only and carry no semantics.
class KripkeModel {
public:
    explicit KripkeModel(int state_count);

    int state_count() const noexcept { return state_count_; }

    void add_edge(int from, int to);
    bool has_edge(int from, int to) const;
    const std::vector<int>& successors(int state) const;
    std::size_t edge_count() const;

    // Make variable p_var true at state.
    void set_true(int var, int state);
    bool holds(int var, int state) const;
    // var -> bit per state; null when the variable is false everywhere.
    const std::vector<bool>* valuation(int var) const;
    const std::map<int, std::vector<bool>>& valuations() const { return valuation_; }

    void set_name(int state, std::string name);
    const std::string* name(int state) const;
    const std::map<int, std::string>& names() const { return names_; }

private:
    void check_state(int state) const;

    int state_count_;
    std::vector<std::vector<int>> adjacency_;  // sorted, unique
    std::map<int, std::vector<bool>> valuation_;
    std::map<int, std::string> names_;
};

// Ultimately periodic path: finite prefix followed by a nonempty loop,
// repeated forever.
struct LassoPath {
    std::vector<int> prefix;
    std::vector<int> loop;

    // The i-th state of the infinite unrolling.
    int at(std::size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return loop[(i - prefix.size()) % loop.size()];
    }

    std::size_t window() const { return prefix.size() + loop.size(); }

    bool operator==(const LassoPath&) const = default;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> problems;

    void add(std::string problem) {
        ok = false;
        problems.push_back(std::move(problem));
    }
    std::string joined() const;
};

// ok iff every state has a successor and every valuation entry names an
// existing state.  Violations are listed, not thrown.
ValidationReport validate_model(const KripkeModel& model);

// ok iff all path states exist, the loop is nonempty, and every consecutive
// pair (prefix, prefix->loop seam, loop wrap) is an edge.
ValidationReport validate_path(const KripkeModel& model, const LassoPath& path);

// ── Model file format ──────────────────────────────────────────────────────
// Line-oriented UTF-8, `#` starts a comment:
//   states <n>                     first directive
//   edge <i> <j>
//   label p<k> <i1> <i2> ...       states where p_k is true
//   name <i> <string>
//   path <i1> ... : <j1> ...       optional lasso (prefix : loop)
// ────────────────────────────────────────────────────────────────────────────

struct ModelFile {
    KripkeModel model;
    std::optional<LassoPath> path;
};

ModelFile read_model_file(std::string_view text);  // throws ParseError
std::string write_model_file(const KripkeModel& model, const LassoPath* path = nullptr);

}  // namespace ltlkit
