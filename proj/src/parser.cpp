#include "ltlkit/errors.hpp"
#include "ltlkit/formula.hpp"

#include <cctype>
#include <string>

namespace ltlkit {

namespace {

enum class Tok { End, LParen, RParen, Arrow, Bang, Amp, Pipe, True, False, NextOp, Finally, Globally, UntilOp, Var };

struct Token {
    Tok kind = Tok::End;
    int var_index = 0;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_blank();
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= text_.size()) {
            current_.kind = Tok::End;
            return;
        }
        char c = text_[pos_];
        if (c == '(') { bump(); current_.kind = Tok::LParen; return; }
        if (c == ')') { bump(); current_.kind = Tok::RParen; return; }
        if (c == '!') { bump(); current_.kind = Tok::Bang; return; }
        if (c == '&') { bump(); current_.kind = Tok::Amp; return; }
        if (c == '|') { bump(); current_.kind = Tok::Pipe; return; }
        if (c == '-') {
            bump();
            if (pos_ < text_.size() && text_[pos_] == '>') { bump(); current_.kind = Tok::Arrow; return; }
            fail("expected '->'");
        }
        if (std::isalnum(static_cast<unsigned char>(c))) {
            std::string word;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                word += text_[pos_];
                bump();
            }
            if (word == "true") { current_.kind = Tok::True; return; }
            if (word == "false") { current_.kind = Tok::False; return; }
            if (word == "X") { current_.kind = Tok::NextOp; return; }
            if (word == "F") { current_.kind = Tok::Finally; return; }
            if (word == "G") { current_.kind = Tok::Globally; return; }
            if (word == "U") { current_.kind = Tok::UntilOp; return; }
            if (word[0] == 'p') {
                if (word.size() == 1) {
                    current_.kind = Tok::Var;
                    current_.var_index = 1;  // bare "p" is an alias for p1
                    return;
                }
                int index = 0;
                for (std::size_t i = 1; i < word.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(word[i]))) fail("bad variable '" + word + "'");
                    index = index * 10 + (word[i] - '0');
                    if (index > 1000000) fail("variable index too large");
                }
                if (index < 1) fail("variable index must be >= 1");
                current_.kind = Tok::Var;
                current_.var_index = index;
                return;
            }
            fail("unknown token '" + word + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    void skip_blank() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, line_, column_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token current_;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    Formula run() {
        if (lex_.peek().kind == Tok::End) throw ParseError("empty input");
        Formula f = parse_implies();
        const Token& t = lex_.peek();
        if (t.kind != Tok::End) throw ParseError("unexpected trailing input", t.line, t.column);
        return f;
    }

private:
    // Precedence, tightest first: {!, X, F, G} > U > & > | > ->.
    Formula parse_implies() {
        Formula lhs = parse_or();
        if (lex_.peek().kind == Tok::Arrow) {
            lex_.take();
            return Formula::implies(lhs, parse_implies());  // right-associative
        }
        return lhs;
    }

    Formula parse_or() {
        Formula lhs = parse_and();
        while (lex_.peek().kind == Tok::Pipe) {
            lex_.take();
            lhs = Formula::disj(lhs, parse_and());
        }
        return lhs;
    }

    Formula parse_and() {
        Formula lhs = parse_until();
        while (lex_.peek().kind == Tok::Amp) {
            lex_.take();
            lhs = Formula::conj(lhs, parse_until());
        }
        return lhs;
    }

    Formula parse_until() {
        Formula lhs = parse_unary();
        if (lex_.peek().kind == Tok::UntilOp) {
            lex_.take();
            return Formula::until(lhs, parse_until());  // right-associative
        }
        return lhs;
    }

    Formula parse_unary() {
        switch (lex_.peek().kind) {
            case Tok::Bang: lex_.take(); return Formula::neg(parse_unary());
            case Tok::NextOp: lex_.take(); return Formula::next(parse_unary());
            case Tok::Finally: lex_.take(); return Formula::eventually(parse_unary());
            case Tok::Globally: lex_.take(); return Formula::always(parse_unary());
            default: return parse_atom();
        }
    }

    Formula parse_atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::True: return Formula::truth();
            case Tok::False: return Formula::falsum();
            case Tok::Var: return Formula::var(t.var_index);
            case Tok::LParen: {
                Formula f = parse_implies();
                Token close = lex_.take();
                if (close.kind != Tok::RParen)
                    throw ParseError("expected ')'", close.line, close.column);
                return f;
            }
            case Tok::End: throw ParseError("unexpected end of input", t.line, t.column);
            default: throw ParseError("expected a formula", t.line, t.column);
        }
    }

    Lexer lex_;
};

// Binding strength used by the printer; larger binds tighter.
constexpr int kLevelImplies = 1;
constexpr int kLevelUntil = 2;
constexpr int kLevelUnary = 3;
constexpr int kLevelAtom = 4;

void print_rec(Formula f, int min_level, std::string& out) {
    if (f == Formula::truth()) {  // the one re-sugared token
        out += "true";
        return;
    }
    switch (f.kind()) {
        case FormulaKind::Var: {
            int i = f.var_index();
            out += (i == 1) ? "p" : "p" + std::to_string(i);
            return;
        }
        case FormulaKind::Falsum:
            out += "false";
            return;
        case FormulaKind::Next: {
            bool parens = kLevelUnary < min_level;
            if (parens) out += '(';
            out += "X ";
            print_rec(f.body(), kLevelUnary, out);
            if (parens) out += ')';
            return;
        }
        case FormulaKind::Until: {
            bool parens = kLevelUntil < min_level;
            if (parens) out += '(';
            print_rec(f.lhs(), kLevelUntil + 1, out);
            out += " U ";
            print_rec(f.rhs(), kLevelUntil, out);  // right-associative
            if (parens) out += ')';
            return;
        }
        case FormulaKind::Implies: {
            bool parens = kLevelImplies < min_level;
            if (parens) out += '(';
            print_rec(f.lhs(), kLevelImplies + 1, out);
            out += " -> ";
            print_rec(f.rhs(), kLevelImplies, out);
            if (parens) out += ')';
            return;
        }
    }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

std::string to_string(Formula f) {
    std::string out;
    print_rec(f, kLevelImplies, out);
    return out;
}

}  // namespace ltlkit
