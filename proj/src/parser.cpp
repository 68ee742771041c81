#include <cctype>
#include <string>

#include "setcalc/expr.hpp"

namespace setcalc {

namespace {

enum class Tok { ident, zero, tilde, star, amp, minus, caret, bar, turnstile, lparen, rparen, equals, comma, semicolon, colon, end };

struct Token {
    Tok kind;
    std::size_t pos;
    std::string text;
};

constexpr int kMaxDepth = 256;

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const unsigned char c = static_cast<unsigned char>(src[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::isalpha(c)) {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Tok::ident, i, std::string(src.substr(i, j - i))});
            i = j;
            continue;
        }
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
            if (j - i != 1 || c != '0') throw SyntaxError(i, "'0' or a set name");
            out.push_back({Tok::zero, i, "0"});
            i = j;
            continue;
        }
        Tok kind;
        std::size_t len = 1;
        switch (c) {
        case '~': kind = Tok::tilde; break;
        case '*': kind = Tok::star; break;
        case '&': kind = Tok::amp; break;
        case '-': kind = Tok::minus; break;
        case '^': kind = Tok::caret; break;
        case '|':
            if (i + 1 < src.size() && src[i + 1] == '-') {
                kind = Tok::turnstile;
                len = 2;
            } else {
                kind = Tok::bar;
            }
            break;
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        case '=': kind = Tok::equals; break;
        case ',': kind = Tok::comma; break;
        case ';': kind = Tok::semicolon; break;
        case ':': kind = Tok::colon; break;
        default: throw SyntaxError(i, "an operator, '(' or a set name");
        }
        out.push_back({kind, i, std::string(src.substr(i, len))});
        i += len;
    }
    out.push_back({Tok::end, src.size(), {}});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    Statement statement() {
        if (peek().kind == Tok::ident && peek().text == "solve" && peek(1).kind == Tok::ident) {
            return solve();
        }
        std::vector<Equation> eqs{equation()};
        while (accept(Tok::comma)) eqs.push_back(equation());
        Identity id;
        if (accept(Tok::turnstile)) {
            id.hypotheses = std::move(eqs);
            id.goal = equation();
        } else if (eqs.size() == 1) {
            id.goal = std::move(eqs.front());
        } else {
            throw SyntaxError(peek().pos, "'|-'");
        }
        expect(Tok::end, "end of input");
        return id;
    }

    ExprPtr lone_expr() {
        ExprPtr e = expr();
        expect(Tok::end, "end of input");
        return e;
    }

    Equation lone_equation() {
        Equation eq = equation();
        expect(Tok::end, "end of input");
        return eq;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(cur_ + ahead, toks_.size() - 1)];
    }

    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++cur_;
        return true;
    }

    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) throw SyntaxError(peek().pos, what);
        return toks_[cur_++];
    }

    Statement solve() {
        ++cur_; // 'solve'
        SolveRequest req;
        do {
            const Token& t = expect(Tok::ident, "an unknown name");
            if (t.text == "U" || !is_identifier(t.text)) throw SyntaxError(t.pos, "an unknown name");
            req.unknowns.push_back(t.text);
        } while (accept(Tok::comma));
        expect(Tok::colon, "':'");
        req.equations.push_back(equation());
        while (accept(Tok::semicolon)) req.equations.push_back(equation());
        expect(Tok::end, "end of input");
        validate(req);
        return req;
    }

    static void validate(const SolveRequest& req) {
        std::set<std::string> seen;
        std::set<std::string> mentioned;
        for (const auto& eq : req.equations) {
            if (eq.lhs->arity() != 1 || eq.rhs->arity() != 1) {
                throw ArityError("solve equations must have arity 1: " + to_string(eq));
            }
            mentioned.merge(atoms(eq.lhs));
            mentioned.merge(atoms(eq.rhs));
        }
        for (const auto& u : req.unknowns) {
            if (!seen.insert(u).second) throw StatementError("unknown '" + u + "' listed twice");
            if (!mentioned.count(u)) throw StatementError("unknown '" + u + "' does not occur in any equation");
        }
    }

    Equation equation() {
        ExprPtr l = expr();
        expect(Tok::equals, "'='");
        ExprPtr r = expr();
        if (l->arity() != r->arity()) {
            throw ArityError("sides of '" + to_string(l) + " = " + to_string(r) + "' have arities " +
                             std::to_string(l->arity()) + " and " + std::to_string(r->arity()));
        }
        return {std::move(l), std::move(r)};
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (accept(Tok::bar)) e = unite(e, term());
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (accept(Tok::minus)) {
                e = difference(e, factor());
            } else if (accept(Tok::caret)) {
                e = symdiff(e, factor());
            } else {
                return e;
            }
        }
    }

    ExprPtr factor() {
        ExprPtr e = item();
        while (accept(Tok::amp)) e = intersect(e, item());
        return e;
    }

    ExprPtr item() {
        ExprPtr e = prim();
        while (accept(Tok::star)) e = product(e, prim());
        return e;
    }

    ExprPtr prim() {
        if (++depth_ > kMaxDepth) throw SyntaxError(peek().pos, "shallower nesting");
        ExprPtr e;
        const Token& t = peek();
        switch (t.kind) {
        case Tok::tilde:
            ++cur_;
            e = complement(prim());
            break;
        case Tok::lparen:
            ++cur_;
            e = expr();
            expect(Tok::rparen, "')'");
            break;
        case Tok::zero:
            ++cur_;
            e = empty_set();
            break;
        case Tok::ident:
            ++cur_;
            e = t.text == "U" ? universal_set() : atom(t.text);
            break;
        default: throw SyntaxError(t.pos, "an expression");
        }
        --depth_;
        return e;
    }

    std::vector<Token> toks_;
    std::size_t cur_ = 0;
    int depth_ = 0;
};

} // namespace

Statement parse(std::string_view text) { return Parser(text).statement(); }

ExprPtr parse_expr(std::string_view text) { return Parser(text).lone_expr(); }

Equation parse_equation(std::string_view text) { return Parser(text).lone_equation(); }

} // namespace setcalc
