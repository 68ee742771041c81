#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "setcalc/expr.hpp"

namespace setcalc {

inline constexpr int kDefaultGuard = 24;

// Membership variable: f_S evaluated at coordinate slot `coord` (1-based).
struct Var {
    std::string set;
    int coord = 1;

    auto operator<=>(const Var&) const = default;
};

// `A`, or `A@2` when coordinates are shown.
std::string to_string(const Var& v, bool with_coord);

// Square-free product of distinct variables, kept sorted.
using Monomial = std::vector<Var>;

// Orders monomials by degree, then lexicographically.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// One membership profile: a 0/1 value for each variable.
using Pattern = std::map<Var, bool>;

// Multilinear integer polynomial over membership variables. Monomials are
// sets, so x*x = x holds structurally and every value is in normal form.
class Poly {
public:
    using Terms = std::map<Monomial, std::int64_t, MonomialLess>;

    Poly() = default;
    static Poly constant(std::int64_t c);
    static Poly variable(Var v);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::int64_t coefficient(const Monomial& m) const;
    // Sorted distinct variables occurring in any monomial.
    std::vector<Var> variables() const;

    friend bool operator==(const Poly&, const Poly&) = default;

    friend Poly operator+(const Poly& p, const Poly& q);
    friend Poly operator-(const Poly& p, const Poly& q);
    friend Poly operator*(const Poly& p, const Poly& q);

private:
    void add_term(const Monomial& m, std::int64_t c);

    Terms terms_;
};

Poly poly_add(const Poly& p, const Poly& q);
Poly poly_sub(const Poly& p, const Poly& q);
Poly poly_mul(const Poly& p, const Poly& q);

// Canonical text: `A + B - 2*A*B`. Coordinates are printed as `A@1` when
// with_coords is set (used for arity > 1).
std::string to_string(const Poly& p, bool with_coords = false);

// Translation of a set expression into its indicator polynomial. Product
// operands on the right have their coordinates shifted by the left arity.
// Throws LimitError when the expression has more than `guard` variables.
Poly poly_from_expr(const ExprPtr& e, int guard = kDefaultGuard);

// Distinct variables of e, in sorted order.
std::vector<Var> expr_variables(const ExprPtr& e);

// Replaces every coordinate c by mapping[c - 1], merging variables that
// collide.
Poly remap_coords(const Poly& p, std::span<const int> mapping);

std::int64_t evaluate(const Poly& p, const Pattern& pt);

// Möbius inversion on the Boolean cube. `table[k]` is the value at the
// pattern in which vars[i] is set iff bit i of k is set. Throws
// IncompleteTableError unless table.size() == 2^vars.size().
Poly poly_from_values(std::span<const Var> vars, std::span<const std::int64_t> table);

// The variables A1..An used by the closed-form generators.
std::vector<Var> indexed_vars(int n, const std::string& prefix = "A");

// Sum over k of (-1)^(k-1) e_k, the indicator of A1 | ... | An.
Poly union_closed_form(int n, int guard = kDefaultGuard);
// Sum over k of (-2)^(k-1) e_k, the indicator of A1 ^ ... ^ An.
Poly symdiff_closed_form(int n, int guard = kDefaultGuard);
// f_A1 * (1 - f_A2) * ... * (1 - f_An), the left-associated A1 - ... - An.
Poly difference_chain(int n, int guard = kDefaultGuard);
// k-th elementary symmetric polynomial in A1..An.
Poly elementary_symmetric(int n, int k);

} // namespace setcalc
