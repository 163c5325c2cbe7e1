#include "ltlkit/kripke.hpp"

#include "ltlkit/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ltlkit {

KripkeModel::KripkeModel(int state_count) : state_count_(state_count) {
    if (state_count < 1) throw std::invalid_argument("a model needs at least one state");
    adjacency_.resize(static_cast<std::size_t>(state_count));
}

void KripkeModel::check_state(int state) const {
    if (state < 0 || state >= state_count_)
        throw std::out_of_range("state " + std::to_string(state) + " out of range");
}

void KripkeModel::add_edge(int from, int to) {
    check_state(from);
    check_state(to);
    auto& row = adjacency_[static_cast<std::size_t>(from)];
    auto pos = std::lower_bound(row.begin(), row.end(), to);
    if (pos == row.end() || *pos != to) row.insert(pos, to);
}

bool KripkeModel::has_edge(int from, int to) const {
    if (from < 0 || from >= state_count_ || to < 0 || to >= state_count_) return false;
    const auto& row = adjacency_[static_cast<std::size_t>(from)];
    return std::binary_search(row.begin(), row.end(), to);
}

const std::vector<int>& KripkeModel::successors(int state) const {
    check_state(state);
    return adjacency_[static_cast<std::size_t>(state)];
}

std::size_t KripkeModel::edge_count() const {
    std::size_t n = 0;
    for (const auto& row : adjacency_) n += row.size();
    return n;
}

void KripkeModel::set_true(int var, int state) {
    check_state(state);
    if (var < 1) throw std::invalid_argument("variable index must be >= 1");
    auto& bits = valuation_[var];
    if (bits.empty()) bits.assign(static_cast<std::size_t>(state_count_), false);
    bits[static_cast<std::size_t>(state)] = true;
}

bool KripkeModel::holds(int var, int state) const {
    check_state(state);
    auto it = valuation_.find(var);
    return it != valuation_.end() && it->second[static_cast<std::size_t>(state)];
}

const std::vector<bool>* KripkeModel::valuation(int var) const {
    auto it = valuation_.find(var);
    return it == valuation_.end() ? nullptr : &it->second;
}

void KripkeModel::set_name(int state, std::string name) {
    check_state(state);
    names_[state] = std::move(name);
}

const std::string* KripkeModel::name(int state) const {
    auto it = names_.find(state);
    return it == names_.end() ? nullptr : &it->second;
}

std::string ValidationReport::joined() const {
    std::string out;
    for (const auto& p : problems) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

ValidationReport validate_model(const KripkeModel& model) {
    ValidationReport report;
    for (int s = 0; s < model.state_count(); ++s)
        if (model.successors(s).empty())
            report.add("state " + std::to_string(s) + " has no successor (relation not serial)");
    for (const auto& [var, bits] : model.valuations())
        if (bits.size() != static_cast<std::size_t>(model.state_count()))
            report.add("valuation of p" + std::to_string(var) + " sized for " +
                       std::to_string(bits.size()) + " states");
    return report;
}

ValidationReport validate_path(const KripkeModel& model, const LassoPath& path) {
    ValidationReport report;
    if (path.loop.empty()) {
        report.add("loop is empty");
        return report;
    }
    auto check_state = [&](int s) {
        if (s < 0 || s >= model.state_count()) {
            report.add("path state " + std::to_string(s) + " does not exist");
            return false;
        }
        return true;
    };
    bool states_ok = true;
    for (int s : path.prefix) states_ok &= check_state(s);
    for (int s : path.loop) states_ok &= check_state(s);
    if (!states_ok) return report;

    auto check_edge = [&](int a, int b, const char* where) {
        if (!model.has_edge(a, b))
            report.add("missing edge " + std::to_string(a) + " -> " + std::to_string(b) +
                       " (" + where + ")");
    };
    for (std::size_t i = 0; i + 1 < path.prefix.size(); ++i)
        check_edge(path.prefix[i], path.prefix[i + 1], "prefix");
    if (!path.prefix.empty()) check_edge(path.prefix.back(), path.loop.front(), "prefix-loop seam");
    for (std::size_t i = 0; i + 1 < path.loop.size(); ++i)
        check_edge(path.loop[i], path.loop[i + 1], "loop");
    check_edge(path.loop.back(), path.loop.front(), "loop wrap");
    return report;
}

namespace {

// Strip comment, split into whitespace-separated tokens.
std::vector<std::string> tokenize_line(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::vector<std::string> tokens;
    std::istringstream in(body);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " '" + tok + "'", line_no);
    }
}

int parse_var_token(const std::string& tok, int line_no) {
    if (tok.empty() || tok[0] != 'p')
        throw ParseError("bad variable '" + tok + "' (expected p<INT>)", line_no);
    if (tok.size() == 1) return 1;
    int v = parse_int(tok.substr(1), line_no, "variable index");
    if (v < 1) throw ParseError("variable index must be >= 1", line_no);
    return v;
}

}  // namespace

ModelFile read_model_file(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;

    std::optional<KripkeModel> model;
    std::optional<LassoPath> path;
    std::map<int, std::string> pending_names;

    auto require_model = [&]() -> KripkeModel& {
        if (!model) throw ParseError("'states <n>' must come first", line_no);
        return *model;
    };
    auto parse_state = [&](const std::string& tok) {
        int s = parse_int(tok, line_no, "state");
        if (s < 0 || s >= require_model().state_count())
            throw ParseError("state " + tok + " out of range", line_no);
        return s;
    };

    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = tokenize_line(line);
        if (tokens.empty()) continue;
        const std::string& directive = tokens[0];

        if (directive == "states") {
            if (model) throw ParseError("duplicate 'states' line", line_no);
            if (tokens.size() != 2) throw ParseError("usage: states <n>", line_no);
            int n = parse_int(tokens[1], line_no, "state count");
            if (n < 1) throw ParseError("state count must be positive", line_no);
            model.emplace(n);
        } else if (directive == "edge") {
            if (tokens.size() != 3) throw ParseError("usage: edge <i> <j>", line_no);
            require_model().add_edge(parse_state(tokens[1]), parse_state(tokens[2]));
        } else if (directive == "label") {
            if (tokens.size() < 2) throw ParseError("usage: label p<k> <states...>", line_no);
            int var = parse_var_token(tokens[1], line_no);
            for (std::size_t i = 2; i < tokens.size(); ++i)
                require_model().set_true(var, parse_state(tokens[i]));
        } else if (directive == "name") {
            if (tokens.size() < 3) throw ParseError("usage: name <i> <string>", line_no);
            int s = parse_state(tokens[1]);
            std::string name = tokens[2];
            for (std::size_t i = 3; i < tokens.size(); ++i) name += " " + tokens[i];
            pending_names[s] = name;
        } else if (directive == "path") {
            if (path) throw ParseError("duplicate 'path' line", line_no);
            LassoPath lasso;
            bool in_loop = false;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (tokens[i] == ":") {
                    if (in_loop) throw ParseError("multiple ':' in path", line_no);
                    in_loop = true;
                } else {
                    (in_loop ? lasso.loop : lasso.prefix).push_back(parse_state(tokens[i]));
                }
            }
            if (!in_loop) throw ParseError("path needs ':' between prefix and loop", line_no);
            if (lasso.loop.empty()) throw ParseError("path loop must be nonempty", line_no);
            path = std::move(lasso);
        } else {
            throw ParseError("unknown directive '" + directive + "'", line_no);
        }
    }
    if (!model) throw ParseError("missing 'states <n>' line", line_no);
    for (auto& [state, name] : pending_names) model->set_name(state, std::move(name));
    return ModelFile{std::move(*model), std::move(path)};
}

std::string write_model_file(const KripkeModel& model, const LassoPath* path) {
    std::ostringstream out;
    out << "states " << model.state_count() << "\n";
    for (const auto& [state, name] : model.names()) out << "name " << state << " " << name << "\n";
    for (int s = 0; s < model.state_count(); ++s)
        for (int t : model.successors(s)) out << "edge " << s << " " << t << "\n";
    for (const auto& [var, bits] : model.valuations()) {
        bool any = false;
        for (bool b : bits) any |= b;
        if (!any) continue;
        out << "label p" << var;
        for (std::size_t s = 0; s < bits.size(); ++s)
            if (bits[s]) out << " " << s;
        out << "\n";
    }
    if (path) {
        out << "path";
        for (int s : path->prefix) out << " " << s;
        out << " :";
        for (int s : path->loop) out << " " << s;
        out << "\n";
    }
    return out.str();
}

}  // namespace ltlkit
