#include "setcalc/expr.hpp"

#include <cctype>

namespace setcalc {

namespace {

// Binding strength, loosest first. Difference and symmetric difference share
// a level.
int precedence(Op op) {
    switch (op) {
    case Op::unite: return 1;
    case Op::difference:
    case Op::symdiff: return 2;
    case Op::intersect: return 3;
    case Op::product: return 4;
    case Op::complement: return 5;
    default: return 6;
    }
}

const char* symbol(Op op) {
    switch (op) {
    case Op::unite: return "|";
    case Op::intersect: return "&";
    case Op::difference: return "-";
    case Op::symdiff: return "^";
    case Op::product: return "*";
    default: return "?";
    }
}

void render(const Expr& e, std::string& out);

void render_operand(const Expr& child, bool parens, std::string& out) {
    if (parens) out += '(';
    render(child, out);
    if (parens) out += ')';
}

void render(const Expr& e, std::string& out) {
    switch (e.op()) {
    case Op::atom: out += e.name(); return;
    case Op::empty: out += '0'; return;
    case Op::universal: out += 'U'; return;
    case Op::complement: {
        out += '~';
        render_operand(*e.left(), precedence(e.left()->op()) < precedence(Op::complement), out);
        return;
    }
    default: break;
    }
    const int p = precedence(e.op());
    const Expr& l = *e.left();
    const Expr& r = *e.right();
    // Mixed `-`/`^` chains are always parenthesized even where
    // left-associativity would make it redundant.
    const bool mixed_left = precedence(l.op()) == p && l.op() != e.op();
    render_operand(l, precedence(l.op()) < p || mixed_left, out);
    out += ' ';
    out += symbol(e.op());
    out += ' ';
    render_operand(r, precedence(r.op()) <= p, out);
}

} // namespace

bool operator==(const Expr& a, const Expr& b) {
    if (&a == &b) return true;
    if (a.op_ != b.op_ || a.name_ != b.name_) return false;
    if (a.left_ && !(*a.left_ == *b.left_)) return false;
    if (a.right_ && !(*a.right_ == *b.right_)) return false;
    return true;
}

bool same(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    return *a == *b;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

ExprPtr atom(std::string name) {
    if (!is_identifier(name)) throw StatementError("invalid set name '" + name + "'");
    if (name == "U") throw StatementError("'U' is reserved for the universal set");
    return ExprPtr(new Expr(Op::atom, std::move(name), nullptr, nullptr, 1));
}

ExprPtr empty_set() {
    static const ExprPtr node(new Expr(Op::empty, {}, nullptr, nullptr, 1));
    return node;
}

ExprPtr universal_set() {
    static const ExprPtr node(new Expr(Op::universal, {}, nullptr, nullptr, 1));
    return node;
}

ExprPtr complement(ExprPtr e) {
    const int a = e->arity();
    return ExprPtr(new Expr(Op::complement, {}, std::move(e), nullptr, a));
}

ExprPtr binary(Op op, ExprPtr l, ExprPtr r) {
    int a = 0;
    if (op == Op::product) {
        a = l->arity() + r->arity();
    } else if (op == Op::unite || op == Op::intersect || op == Op::difference || op == Op::symdiff) {
        if (l->arity() != r->arity()) {
            throw ArityError("'" + to_string(l) + "' has arity " + std::to_string(l->arity()) + " but '" +
                             to_string(r) + "' has arity " + std::to_string(r->arity()));
        }
        a = l->arity();
    } else {
        throw StatementError("not a binary operator");
    }
    return ExprPtr(new Expr(op, {}, std::move(l), std::move(r), a));
}

int arity(const ExprPtr& e) { return e->arity(); }

std::set<std::string> atoms(const ExprPtr& e) {
    std::set<std::string> out;
    std::vector<const Expr*> stack{e.get()};
    while (!stack.empty()) {
        const Expr* n = stack.back();
        stack.pop_back();
        if (n->op() == Op::atom) out.insert(n->name());
        if (n->left()) stack.push_back(n->left().get());
        if (n->right()) stack.push_back(n->right().get());
    }
    return out;
}

std::string to_string(const ExprPtr& e) {
    std::string out;
    render(*e, out);
    return out;
}

std::string to_string(const Equation& eq) { return to_string(eq.lhs) + " = " + to_string(eq.rhs); }

std::string to_string(const Statement& s) {
    std::string out;
    if (const auto* id = std::get_if<Identity>(&s)) {
        for (std::size_t i = 0; i < id->hypotheses.size(); ++i) {
            if (i) out += ", ";
            out += to_string(id->hypotheses[i]);
        }
        if (!id->hypotheses.empty()) out += " |- ";
        out += to_string(id->goal);
        return out;
    }
    const auto& req = std::get<SolveRequest>(s);
    out = "solve ";
    for (std::size_t i = 0; i < req.unknowns.size(); ++i) {
        if (i) out += ", ";
        out += req.unknowns[i];
    }
    out += " : ";
    for (std::size_t i = 0; i < req.equations.size(); ++i) {
        if (i) out += " ; ";
        out += to_string(req.equations[i]);
    }
    return out;
}

} // namespace setcalc
