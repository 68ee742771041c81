#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "setcalc/errors.hpp"

namespace setcalc {

enum class Op {
    atom,
    empty,      // 0
    universal,  // U
    complement, // ~e
    unite,      // l | r
    intersect,  // l & r
    difference, // l - r
    symdiff,    // l ^ r
    product,    // l * r
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable set-expression node. Nodes are only built through the factory
// functions below, which enforce the arity rules, so every reachable tree is
// well-formed.
class Expr {
public:
    Op op() const noexcept { return op_; }
    const std::string& name() const noexcept { return name_; }
    const ExprPtr& left() const noexcept { return left_; }
    const ExprPtr& right() const noexcept { return right_; }
    // Tuple length of the values this expression denotes.
    int arity() const noexcept { return arity_; }

    bool is_binary() const noexcept { return left_ && right_; }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    friend ExprPtr atom(std::string name);
    friend ExprPtr empty_set();
    friend ExprPtr universal_set();
    friend ExprPtr complement(ExprPtr e);
    friend ExprPtr binary(Op op, ExprPtr l, ExprPtr r);

    Expr(Op op, std::string name, ExprPtr l, ExprPtr r, int arity)
        : op_(op), name_(std::move(name)), left_(std::move(l)), right_(std::move(r)), arity_(arity) {}

    Op op_;
    std::string name_;
    ExprPtr left_;
    ExprPtr right_;
    int arity_;
};

bool operator==(const Expr& a, const Expr& b);
bool same(const ExprPtr& a, const ExprPtr& b);

// Throws StatementError if the name is not a legal identifier or is reserved.
ExprPtr atom(std::string name);
ExprPtr empty_set();
ExprPtr universal_set();
ExprPtr complement(ExprPtr e);
// Throws ArityError when a non-product operator joins different arities.
ExprPtr binary(Op op, ExprPtr l, ExprPtr r);

inline ExprPtr unite(ExprPtr l, ExprPtr r) { return binary(Op::unite, std::move(l), std::move(r)); }
inline ExprPtr intersect(ExprPtr l, ExprPtr r) { return binary(Op::intersect, std::move(l), std::move(r)); }
inline ExprPtr difference(ExprPtr l, ExprPtr r) { return binary(Op::difference, std::move(l), std::move(r)); }
inline ExprPtr symdiff(ExprPtr l, ExprPtr r) { return binary(Op::symdiff, std::move(l), std::move(r)); }
inline ExprPtr product(ExprPtr l, ExprPtr r) { return binary(Op::product, std::move(l), std::move(r)); }

int arity(const ExprPtr& e);

bool is_identifier(std::string_view s);

// Names of all atoms occurring in e.
std::set<std::string> atoms(const ExprPtr& e);

// Minimal-parenthesization rendering; parse_expr(to_string(e)) == e.
std::string to_string(const ExprPtr& e);

struct Equation {
    ExprPtr lhs;
    ExprPtr rhs;
};

// `h1, h2 |- lhs = rhs`; an empty hypothesis list is a plain identity.
struct Identity {
    std::vector<Equation> hypotheses;
    Equation goal;
};

struct SolveRequest {
    std::vector<std::string> unknowns;
    std::vector<Equation> equations;
};

using Statement = std::variant<Identity, SolveRequest>;

std::string to_string(const Equation& eq);
std::string to_string(const Statement& s);

// Throws SyntaxError, ArityError or StatementError.
Statement parse(std::string_view text);
ExprPtr parse_expr(std::string_view text);
Equation parse_equation(std::string_view text);

} // namespace setcalc
