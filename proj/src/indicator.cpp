#include "setcalc/indicator.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <set>

namespace setcalc {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
    return r;
}

std::int64_t checked_neg(std::int64_t a) { return checked_mul(a, -1); }

Monomial merge(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void collect_vars(const Expr& e, int offset, std::set<Var>& out) {
    switch (e.op()) {
    case Op::atom: out.insert({e.name(), offset + 1}); return;
    case Op::empty:
    case Op::universal: return;
    case Op::complement: collect_vars(*e.left(), offset, out); return;
    case Op::product:
        collect_vars(*e.left(), offset, out);
        collect_vars(*e.right(), offset + e.left()->arity(), out);
        return;
    default:
        collect_vars(*e.left(), offset, out);
        collect_vars(*e.right(), offset, out);
        return;
    }
}

Poly translate(const Expr& e, int offset) {
    switch (e.op()) {
    case Op::atom: return Poly::variable({e.name(), offset + 1});
    case Op::empty: return Poly();
    case Op::universal: return Poly::constant(1);
    case Op::complement: return Poly::constant(1) - translate(*e.left(), offset);
    case Op::product: return translate(*e.left(), offset) * translate(*e.right(), offset + e.left()->arity());
    default: break;
    }
    const Poly a = translate(*e.left(), offset);
    const Poly b = translate(*e.right(), offset);
    switch (e.op()) {
    case Op::intersect: return a * b;
    case Op::unite: return a + b - a * b;
    case Op::difference: return a * (Poly::constant(1) - b);
    case Op::symdiff: {
        const Poly ab = a * b;
        return a + b - ab - ab;
    }
    default: throw Error("unreachable operator");
    }
}

void check_arity_n(int n, int guard) {
    if (n < 1) throw LimitError("closed forms need n >= 1");
    if (n > guard) throw LimitError(std::to_string(n) + " variables exceeds guard of " + std::to_string(guard));
}

// Sum over nonempty subsets S of {1..n} of weight(|S|) * prod_{i in S} A_i.
Poly subset_sum(int n, std::int64_t ratio) {
    const auto vars = indexed_vars(n);
    Poly out;
    std::vector<std::int64_t> weight(n + 1, 1);
    for (int k = 2; k <= n; ++k) weight[k] = checked_mul(weight[k - 1], ratio);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        Poly term = Poly::constant(weight[std::popcount(mask)]);
        for (int i = 0; i < n; ++i) {
            if (mask >> i & 1) term = term * Poly::variable(vars[i]);
        }
        out = out + term;
    }
    return out;
}

} // namespace

std::string to_string(const Var& v, bool with_coord) {
    return with_coord ? v.set + "@" + std::to_string(v.coord) : v.set;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

Poly Poly::constant(std::int64_t c) {
    Poly p;
    p.add_term({}, c);
    return p;
}

Poly Poly::variable(Var v) {
    Poly p;
    p.add_term({std::move(v)}, 1);
    return p;
}

std::int64_t Poly::coefficient(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

std::vector<Var> Poly::variables() const {
    std::set<Var> vs;
    for (const auto& [m, c] : terms_) vs.insert(m.begin(), m.end());
    return {vs.begin(), vs.end()};
}

void Poly::add_term(const Monomial& m, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

Poly operator+(const Poly& p, const Poly& q) {
    Poly r = p;
    for (const auto& [m, c] : q.terms_) r.add_term(m, c);
    return r;
}

Poly operator-(const Poly& p, const Poly& q) {
    Poly r = p;
    for (const auto& [m, c] : q.terms_) r.add_term(m, checked_neg(c));
    return r;
}

Poly operator*(const Poly& p, const Poly& q) {
    Poly r;
    for (const auto& [ma, ca] : p.terms_) {
        for (const auto& [mb, cb] : q.terms_) r.add_term(merge(ma, mb), checked_mul(ca, cb));
    }
    return r;
}

Poly poly_add(const Poly& p, const Poly& q) { return p + q; }
Poly poly_sub(const Poly& p, const Poly& q) { return p - q; }
Poly poly_mul(const Poly& p, const Poly& q) { return p * q; }

std::string to_string(const Poly& p, bool with_coords) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool neg = c < 0;
        const std::uint64_t mag = neg ? 0 - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
        if (first) {
            if (neg) out += '-';
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        if (m.empty()) {
            out += std::to_string(mag);
            continue;
        }
        if (mag != 1) out += std::to_string(mag) + "*";
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i) out += '*';
            out += to_string(m[i], with_coords);
        }
    }
    return out;
}

std::vector<Var> expr_variables(const ExprPtr& e) {
    std::set<Var> vs;
    collect_vars(*e, 0, vs);
    return {vs.begin(), vs.end()};
}

Poly poly_from_expr(const ExprPtr& e, int guard) {
    const auto n = expr_variables(e).size();
    if (n > static_cast<std::size_t>(guard)) {
        throw LimitError(std::to_string(n) + " variables exceeds guard of " + std::to_string(guard));
    }
    return translate(*e, 0);
}

Poly remap_coords(const Poly& p, std::span<const int> mapping) {
    Poly out;
    for (const auto& [m, c] : p.terms()) {
        Poly term = Poly::constant(c);
        for (const auto& v : m) {
            if (v.coord < 1 || static_cast<std::size_t>(v.coord) > mapping.size()) {
                throw ArityError("coordinate " + std::to_string(v.coord) + " outside remapping");
            }
            term = term * Poly::variable({v.set, mapping[v.coord - 1]});
        }
        out = out + term;
    }
    return out;
}

std::int64_t evaluate(const Poly& p, const Pattern& pt) {
    std::int64_t total = 0;
    for (const auto& [m, c] : p.terms()) {
        bool on = true;
        for (const auto& v : m) {
            const auto it = pt.find(v);
            if (it == pt.end()) throw MissingVarError(to_string(v, true));
            on = on && it->second;
        }
        if (on) total = checked_add(total, c);
    }
    return total;
}

Poly poly_from_values(std::span<const Var> vars, std::span<const std::int64_t> table) {
    const std::size_t n = vars.size();
    if (n >= 63 || table.size() != (std::size_t{1} << n)) {
        throw IncompleteTableError("expected " + (n >= 63 ? std::string("2^") + std::to_string(n)
                                                           : std::to_string(std::size_t{1} << n)) +
                                   " entries, got " + std::to_string(table.size()));
    }
    if (!std::is_sorted(vars.begin(), vars.end()) ||
        std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
        throw IncompleteTableError("variables must be distinct and sorted");
    }
    std::vector<std::int64_t> coef(table.begin(), table.end());
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t mask = 0; mask < coef.size(); ++mask) {
            if (mask & bit) coef[mask] = checked_add(coef[mask], checked_neg(coef[mask ^ bit]));
        }
    }
    Poly out;
    for (std::size_t mask = 0; mask < coef.size(); ++mask) {
        if (coef[mask] == 0) continue;
        Poly term = Poly::constant(coef[mask]);
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) term = term * Poly::variable(vars[i]);
        }
        out = out + term;
    }
    return out;
}

std::vector<Var> indexed_vars(int n, const std::string& prefix) {
    std::vector<Var> vs;
    for (int i = 1; i <= n; ++i) vs.push_back({prefix + std::to_string(i), 1});
    return vs;
}

Poly union_closed_form(int n, int guard) {
    check_arity_n(n, guard);
    return subset_sum(n, -1);
}

Poly symdiff_closed_form(int n, int guard) {
    check_arity_n(n, guard);
    return subset_sum(n, -2);
}

Poly difference_chain(int n, int guard) {
    check_arity_n(n, guard);
    const auto vars = indexed_vars(n);
    Poly out;
    // Expand over the subsets S of {2..n}: (-1)^|S| * A1 * prod_S A_i.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
        Poly term = Poly::constant(std::popcount(mask) % 2 ? -1 : 1) * Poly::variable(vars[0]);
        for (int i = 1; i < n; ++i) {
            if (mask >> (i - 1) & 1) term = term * Poly::variable(vars[i]);
        }
        out = out + term;
    }
    return out;
}

Poly elementary_symmetric(int n, int k) {
    const auto vars = indexed_vars(n);
    Poly out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        Poly term = Poly::constant(1);
        for (int i = 0; i < n; ++i) {
            if (mask >> i & 1) term = term * Poly::variable(vars[i]);
        }
        out = out + term;
    }
    return out;
}

} // namespace setcalc
