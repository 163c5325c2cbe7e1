#include "ltlkit/turing.hpp"

#include "ltlkit/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ltlkit {

const TmRule* TmSpec::rule_for(int state, int symbol) const {
    for (const TmRule& r : rules)
        if (r.state == state && r.symbol == symbol) return &r;
    return nullptr;
}

ValidationReport validate_tm(const TmSpec& tm) {
    ValidationReport report;
    auto state_name = [&](int q) { return tm.states[static_cast<std::size_t>(q)]; };
    auto symbol_name = [&](int a) { return tm.alphabet[static_cast<std::size_t>(a)]; };

    if (tm.states.empty()) report.add("no states");
    if (tm.alphabet.empty()) report.add("no alphabet");
    if (tm.space_poly.empty()) report.add("no space bound");
    if (!report.ok) return report;

    std::map<std::pair<int, int>, int> seen;
    for (const TmRule& r : tm.rules) {
        if (++seen[{r.state, r.symbol}] == 2)
            report.add("duplicate rule for (" + state_name(r.state) + ", " + symbol_name(r.symbol) +
                       ") (program not deterministic)");
        if (r.symbol == tm.left_marker && r.move == Move::Left)
            report.add("rule (" + state_name(r.state) + ", " + symbol_name(r.symbol) +
                       ") moves left on the marker");
    }
    for (int q = 0; q < tm.state_count(); ++q) {
        for (int a = 0; a < tm.symbol_count(); ++a) {
            auto it = seen.find({q, a});
            if (it == seen.end()) {
                report.add("missing rule for (" + state_name(q) + ", " + symbol_name(a) + ")");
                continue;
            }
            if (q == tm.final_state) {
                const TmRule* r = tm.rule_for(q, a);
                if (r->next_state != q || r->write != a || r->move != Move::Stay)
                    report.add("final state does not yield itself on " + symbol_name(a));
            }
        }
    }
    return report;
}

int space_bound(const TmSpec& tm, int input_len) {
    long long total = 0;
    long long power = 1;
    for (long long c : tm.space_poly) {
        total += c * power;
        power *= input_len;
        if (power > 2'000'000'000'000LL || total > 2'000'000'000'000LL)
            throw SemanticError("space bound too large for direct simulation");
    }
    if (total < input_len + 1)
        throw SemanticError("space bound " + std::to_string(total) + " below input length + 1");
    if (total > 1'000'000) throw SemanticError("space bound too large for direct simulation");
    return static_cast<int>(total);
}

namespace {

struct ConfigHash {
    std::size_t operator()(const TmConfig& c) const noexcept {
        std::size_t h = static_cast<std::size_t>(c.state) * 1000003u ^
                        static_cast<std::size_t>(c.head);
        for (int a : c.tape) h = h * 1000003u ^ static_cast<std::size_t>(a);
        return h;
    }
};

}  // namespace

RunResult simulate(const TmSpec& tm, const std::vector<int>& input) {
    if (auto r = validate_tm(tm); !r.ok) throw SemanticError("invalid machine: " + r.joined());
    for (int a : input) {
        if (a < 0 || a >= tm.symbol_count()) throw SemanticError("input symbol out of range");
        if (a == tm.left_marker) throw SemanticError("input may not contain the marker symbol");
    }

    const int n = static_cast<int>(input.size());
    const int space = space_bound(tm, n);

    TmConfig config;
    config.state = tm.start;
    config.head = 1;
    config.tape.assign(static_cast<std::size_t>(space), tm.blank);
    config.tape[0] = tm.left_marker;
    for (int i = 0; i < n; ++i) config.tape[static_cast<std::size_t>(i) + 1] = input[i];

    TmConfig accepting;
    accepting.state = tm.final_state;
    accepting.head = 1;
    accepting.tape.assign(static_cast<std::size_t>(space), tm.blank);

    RunResult result;
    std::unordered_map<TmConfig, std::size_t, ConfigHash> seen;
    for (;;) {
        auto it = seen.find(config);
        if (it != seen.end()) {
            result.cycle_start = it->second;
            break;
        }
        seen.emplace(config, result.trace.size());
        result.trace.push_back(config);
        if (config == accepting) result.accepted = true;
        // Direct simulation stores every distinct configuration; refuse runs
        // that outgrow desk scale instead of thrashing.
        if (result.trace.size() * static_cast<std::size_t>(space) > (32u << 20))
            throw SemanticError("run too long for direct simulation");

        const TmRule* rule = tm.rule_for(config.state, config.tape[static_cast<std::size_t>(config.head - 1)]);
        if (!rule) throw SemanticError("no rule applies (validation gap)");
        config.tape[static_cast<std::size_t>(config.head - 1)] = rule->write;
        config.state = rule->next_state;
        if (rule->move == Move::Left) --config.head;
        if (rule->move == Move::Right) ++config.head;
        if (config.head < 1 || config.head > space)
            throw SemanticError("head left the tape (machine exceeds its space bound)");
    }
    return result;
}

std::vector<int> parse_word(const TmSpec& tm, std::string_view word) {
    // Greedy longest-match segmentation over symbol names.
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < word.size()) {
        int best = -1;
        std::size_t best_len = 0;
        for (int a = 0; a < tm.symbol_count(); ++a) {
            const std::string& name = tm.alphabet[static_cast<std::size_t>(a)];
            if (name.size() > best_len && word.substr(pos, name.size()) == name) {
                best = a;
                best_len = name.size();
            }
        }
        if (best < 0)
            throw SemanticError("cannot read an alphabet symbol at '" + std::string(word.substr(pos)) + "'");
        if (best == tm.left_marker) throw SemanticError("input may not contain the marker symbol");
        out.push_back(best);
        pos += best_len;
    }
    return out;
}

namespace {

std::vector<std::string> tokenize_line(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::vector<std::string> tokens;
    std::istringstream in(body);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

int find_name(const std::vector<std::string>& names, const std::string& tok, int line_no,
              const char* what) {
    auto it = std::find(names.begin(), names.end(), tok);
    if (it == names.end())
        throw ParseError(std::string("unknown ") + what + " '" + tok + "'", line_no);
    return static_cast<int>(it - names.begin());
}

}  // namespace

TmSpec read_tm_file(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;

    TmSpec tm;
    bool have_start = false, have_accept = false, have_blank = false, have_marker = false;

    auto need_states = [&]() {
        if (tm.states.empty()) throw ParseError("'states' must come before this line", line_no);
    };
    auto need_alphabet = [&]() {
        if (tm.alphabet.empty()) throw ParseError("'alphabet' must come before this line", line_no);
    };

    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = tokenize_line(line);
        if (tokens.empty()) continue;
        const std::string& directive = tokens[0];

        if (directive == "states") {
            if (!tm.states.empty()) throw ParseError("duplicate 'states' line", line_no);
            if (tokens.size() < 2) throw ParseError("usage: states <name>...", line_no);
            tm.states.assign(tokens.begin() + 1, tokens.end());
        } else if (directive == "alphabet") {
            if (!tm.alphabet.empty()) throw ParseError("duplicate 'alphabet' line", line_no);
            if (tokens.size() < 2) throw ParseError("usage: alphabet <name>...", line_no);
            tm.alphabet.assign(tokens.begin() + 1, tokens.end());
        } else if (directive == "start" || directive == "accept") {
            if (tokens.size() != 2) throw ParseError("usage: " + directive + " <state>", line_no);
            need_states();
            int q = find_name(tm.states, tokens[1], line_no, "state");
            (directive == "start" ? tm.start : tm.final_state) = q;
            (directive == "start" ? have_start : have_accept) = true;
        } else if (directive == "blank" || directive == "leftmarker") {
            if (tokens.size() != 2) throw ParseError("usage: " + directive + " <symbol>", line_no);
            need_alphabet();
            int a = find_name(tm.alphabet, tokens[1], line_no, "symbol");
            (directive == "blank" ? tm.blank : tm.left_marker) = a;
            (directive == "blank" ? have_blank : have_marker) = true;
        } else if (directive == "space") {
            if (!tm.space_poly.empty()) throw ParseError("duplicate 'space' line", line_no);
            if (tokens.size() < 2) throw ParseError("usage: space <c0> <c1> ...", line_no);
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                try {
                    tm.space_poly.push_back(std::stoll(tokens[i]));
                } catch (const std::exception&) {
                    throw ParseError("bad coefficient '" + tokens[i] + "'", line_no);
                }
            }
        } else if (directive == "rule") {
            if (tokens.size() != 6)
                throw ParseError("usage: rule <q> <a> <q'> <a'> <L|R|S>", line_no);
            need_states();
            need_alphabet();
            TmRule r;
            r.state = find_name(tm.states, tokens[1], line_no, "state");
            r.symbol = find_name(tm.alphabet, tokens[2], line_no, "symbol");
            r.next_state = find_name(tm.states, tokens[3], line_no, "state");
            r.write = find_name(tm.alphabet, tokens[4], line_no, "symbol");
            if (tokens[5] == "L") r.move = Move::Left;
            else if (tokens[5] == "R") r.move = Move::Right;
            else if (tokens[5] == "S") r.move = Move::Stay;
            else throw ParseError("bad move '" + tokens[5] + "' (want L, R or S)", line_no);
            tm.rules.push_back(r);
        } else {
            throw ParseError("unknown directive '" + directive + "'", line_no);
        }
    }
    if (tm.states.empty()) throw ParseError("missing 'states' line", line_no);
    if (tm.alphabet.empty()) throw ParseError("missing 'alphabet' line", line_no);
    if (!have_start) throw ParseError("missing 'start' line", line_no);
    if (!have_accept) throw ParseError("missing 'accept' line", line_no);
    if (!have_blank) throw ParseError("missing 'blank' line", line_no);
    if (!have_marker) throw ParseError("missing 'leftmarker' line", line_no);
    if (tm.space_poly.empty()) throw ParseError("missing 'space' line", line_no);
    return tm;
}

std::string write_tm_file(const TmSpec& tm) {
    std::ostringstream out;
    out << "states";
    for (const auto& q : tm.states) out << " " << q;
    out << "\nalphabet";
    for (const auto& a : tm.alphabet) out << " " << a;
    out << "\nstart " << tm.states[static_cast<std::size_t>(tm.start)];
    out << "\naccept " << tm.states[static_cast<std::size_t>(tm.final_state)];
    out << "\nblank " << tm.alphabet[static_cast<std::size_t>(tm.blank)];
    out << "\nleftmarker " << tm.alphabet[static_cast<std::size_t>(tm.left_marker)];
    out << "\nspace";
    for (long long c : tm.space_poly) out << " " << c;
    out << "\n";
    for (const TmRule& r : tm.rules) {
        out << "rule " << tm.states[static_cast<std::size_t>(r.state)] << " "
            << tm.alphabet[static_cast<std::size_t>(r.symbol)] << " "
            << tm.states[static_cast<std::size_t>(r.next_state)] << " "
            << tm.alphabet[static_cast<std::size_t>(r.write)] << " "
            << (r.move == Move::Left ? "L" : r.move == Move::Right ? "R" : "S") << "\n";
    }
    return out.str();
}

}  // namespace ltlkit
