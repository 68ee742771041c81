#include "setcalc/structures.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

namespace setcalc {

namespace {

// Accumulates one axiom: counts instances, keeps the first failure.
class Axiom {
public:
    explicit Axiom(std::string name) { result_.name = std::move(name); }

    template <typename... Sets>
    void expect(bool ok, const Sets&... sets) {
        ++result_.checked;
        if (!ok && result_.passed) {
            result_.passed = false;
            result_.counterexample = {sets...};
        }
    }

    void fail(std::vector<ConcreteSet> counterexample) {
        ++result_.checked;
        if (result_.passed) {
            result_.passed = false;
            result_.counterexample = std::move(counterexample);
        }
    }

    void pass() { ++result_.checked; }

    AxiomResult take() { return std::move(result_); }

private:
    AxiomResult result_;
};

void require_small(const UniverseRef& u, std::size_t cap) {
    if (u->size() > cap) {
        throw LimitError("universe of " + std::to_string(u->size()) + " points (max " + std::to_string(cap) + ")");
    }
}

using BinOp = std::function<ConcreteSet(const ConcreteSet&, const ConcreteSet&)>;

bool in_carrier(const ConcreteSet& s, const UniverseRef& u) {
    return same_universe(s.universe(), u) && s.size() == u->size();
}

// Closure, associativity, commutativity and a two-sided neutral element.
void monoid_axioms(const std::vector<ConcreteSet>& ps, const UniverseRef& u, const BinOp& op,
                   const ConcreteSet& neutral, const std::string& prefix, StructureReport& out) {
    Axiom closure(prefix + "closure");
    Axiom assoc(prefix + "associativity");
    Axiom comm(prefix + "commutativity");
    Axiom unit(prefix + "neutral element");
    for (const auto& a : ps) {
        unit.expect(op(a, neutral) == a && op(neutral, a) == a, a);
        for (const auto& b : ps) {
            const ConcreteSet ab = op(a, b);
            closure.expect(in_carrier(ab, u), a, b);
            comm.expect(ab == op(b, a), a, b);
            for (const auto& c : ps) assoc.expect(op(ab, c) == op(a, op(b, c)), a, b, c);
        }
    }
    out.axioms.push_back(closure.take());
    out.axioms.push_back(assoc.take());
    out.axioms.push_back(comm.take());
    out.axioms.push_back(unit.take());
}

void self_inverse_axiom(const std::vector<ConcreteSet>& ps, const ConcreteSet& zero, const std::string& prefix,
                        StructureReport& out) {
    Axiom inv(prefix + "inverse (A ^ A = 0)");
    std::size_t self_inverse = 0;
    for (const auto& a : ps) {
        const bool ok = (a ^ a) == zero;
        self_inverse += ok;
        inv.expect(ok, a);
    }
    out.axioms.push_back(inv.take());
    out.extras.push_back({"self-inverse elements", std::to_string(self_inverse) + " of " + std::to_string(ps.size())});
}

std::size_t mask_of(const ConcreteSet& s) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.contains(i)) m |= std::size_t{1} << i;
    }
    return m;
}

ConcreteSet value_of(const ExprPtr& e, const Environment& env, const UniverseRef& u) {
    return std::get<ConcreteSet>(eval_expr(e, env, u));
}

bool holds(const Equation& eq, const Environment& env, const UniverseRef& u) {
    return value_of(eq.lhs, env, u) == value_of(eq.rhs, env, u);
}

std::string pair_text(const ConcreteSet& a, const ConcreteSet& b) {
    return "(" + to_string(a) + ", " + to_string(b) + ")";
}

} // namespace

bool StructureReport::passed() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
}

const AxiomResult* StructureReport::axiom(const std::string& name) const {
    for (const auto& a : axioms) {
        if (a.name == name) return &a;
    }
    return nullptr;
}

const std::string* StructureReport::extra(const std::string& name) const {
    for (const auto& [k, v] : extras) {
        if (k == name) return &v;
    }
    return nullptr;
}

StructureReport check_monoid(MonoidOp op, const UniverseRef& u) {
    require_small(u, kMaxStructurePoints);
    const auto ps = powerset(u);
    StructureReport out;
    out.universe_size = u->size();
    if (op == MonoidOp::unite) {
        out.structure = "monoid-union";
        const ConcreteSet neutral(u);
        monoid_axioms(ps, u, [](const auto& a, const auto& b) { return a | b; }, neutral, "", out);
        out.extras.push_back({"neutral", to_string(neutral)});
    } else {
        out.structure = "monoid-intersect";
        const ConcreteSet neutral = ConcreteSet::full(u);
        monoid_axioms(ps, u, [](const auto& a, const auto& b) { return a & b; }, neutral, "", out);
        out.extras.push_back({"neutral", to_string(neutral)});
    }
    return out;
}

StructureReport check_group_symdiff(const UniverseRef& u) {
    require_small(u, kMaxStructurePoints);
    const auto ps = powerset(u);
    StructureReport out;
    out.structure = "group";
    out.universe_size = u->size();
    const ConcreteSet zero(u);
    monoid_axioms(ps, u, [](const auto& a, const auto& b) { return a ^ b; }, zero, "", out);
    self_inverse_axiom(ps, zero, "", out);
    out.extras.push_back({"neutral", to_string(zero)});
    return out;
}

StructureReport check_boolean_ring(const UniverseRef& u) {
    require_small(u, kMaxStructurePoints);
    const auto ps = powerset(u);
    StructureReport out;
    out.structure = "boolean-ring";
    out.universe_size = u->size();
    const ConcreteSet zero(u);
    const ConcreteSet one = ConcreteSet::full(u);
    monoid_axioms(ps, u, [](const auto& a, const auto& b) { return a ^ b; }, zero, "additive ", out);
    self_inverse_axiom(ps, zero, "additive ", out);
    monoid_axioms(ps, u, [](const auto& a, const auto& b) { return a & b; }, one, "multiplicative ", out);

    Axiom left("left distributivity");
    Axiom right("right distributivity");
    Axiom idem("idempotence (A & A = A)");
    std::optional<std::pair<ConcreteSet, ConcreteSet>> zero_divisors;
    for (const auto& a : ps) {
        idem.expect((a & a) == a, a);
        for (const auto& b : ps) {
            if (!zero_divisors && !a.empty() && !b.empty() && (a & b).empty()) zero_divisors.emplace(a, b);
            for (const auto& c : ps) {
                left.expect((a & (b ^ c)) == ((a & b) ^ (a & c)), a, b, c);
                right.expect(((a ^ b) & c) == ((a & c) ^ (b & c)), a, b, c);
            }
        }
    }
    out.axioms.push_back(left.take());
    out.axioms.push_back(right.take());
    out.axioms.push_back(idem.take());
    out.extras.push_back(
        {"zero divisors", zero_divisors ? pair_text(zero_divisors->first, zero_divisors->second) : "none"});
    return out;
}

StructureReport check_isomorphism(const UniverseRef& u) {
    require_small(u, kMaxStructurePoints);
    const std::size_t n = u->size();
    const auto ps = powerset(u);
    StructureReport out;
    out.structure = "isomorphism";
    out.universe_size = n;

    using Table = std::vector<int>;
    // H: every map u -> {0, 1}, enumerated as an odometer over the points.
    std::vector<Table> h;
    Table t(n, 0);
    for (;;) {
        h.push_back(t);
        std::size_t i = 0;
        while (i < n && t[i] == 1) t[i++] = 0;
        if (i == n) break;
        t[i] = 1;
    }
    const auto characteristic = [&](const ConcreteSet& s) {
        Table f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = s.contains(i) ? 1 : 0;
        return f;
    };
    const auto oplus = [&](const Table& f, const Table& g) {
        Table r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = f[i] + g[i] - 2 * f[i] * g[i];
        return r;
    };
    const auto as_set = [&](const Table& f) {
        std::vector<bool> bits(n);
        for (std::size_t i = 0; i < n; ++i) bits[i] = f[i] != 0;
        return ConcreteSet(u, std::move(bits));
    };

    Axiom closure("H closure (values in {0,1})");
    Axiom assoc("H associativity");
    Axiom comm("H commutativity");
    Axiom unit("H neutral element");
    Axiom inv("H inverse (f + f = 0)");
    const Table zero(n, 0);
    for (const auto& f : h) {
        unit.expect(oplus(f, zero) == f, as_set(f));
        inv.expect(oplus(f, f) == zero, as_set(f));
        for (const auto& g : h) {
            const Table fg = oplus(f, g);
            closure.expect(std::all_of(fg.begin(), fg.end(), [](int v) { return v == 0 || v == 1; }), as_set(f),
                           as_set(g));
            comm.expect(fg == oplus(g, f), as_set(f), as_set(g));
            for (const auto& k : h) assoc.expect(oplus(fg, k) == oplus(f, oplus(g, k)), as_set(f), as_set(g), as_set(k));
        }
    }

    Axiom injective("F injective");
    Axiom surjective("F surjective");
    Axiom hom("F(A ^ B) = F(A) + F(B)");
    std::map<Table, std::size_t> preimages;
    for (const auto& a : ps) {
        const Table fa = characteristic(a);
        const std::size_t seen = preimages[fa]++;
        injective.expect(seen == 0, a);
        for (const auto& b : ps) hom.expect(characteristic(a ^ b) == oplus(fa, characteristic(b)), a, b);
    }
    for (const auto& f : h) surjective.expect(preimages.count(f) == 1, as_set(f));

    for (Axiom* ax : {&closure, &assoc, &comm, &unit, &inv, &injective, &surjective, &hom}) {
        out.axioms.push_back(ax->take());
    }
    out.extras.push_back({"|P(E)|", std::to_string(ps.size())});
    out.extras.push_back({"|H|", std::to_string(h.size())});
    return out;
}

StructureReport check_metric_space(const UniverseRef& u, std::uint64_t seed, std::size_t chain_samples) {
    require_small(u, kMaxStructurePoints);
    const auto ps = powerset(u);
    StructureReport out;
    out.structure = "metric";
    out.universe_size = u->size();

    Axiom identity("d(A, B) = 0 iff A = B");
    Axiom symmetry("symmetry");
    Axiom triangle("triangle inequality");
    std::uint64_t tight = 0;
    std::optional<std::string> tight_example;
    for (const auto& a : ps) {
        for (const auto& b : ps) {
            const std::size_t ab = metric(a, b);
            identity.expect((ab == 0) == (a == b), a, b);
            symmetry.expect(ab == metric(b, a), a, b);
            for (const auto& c : ps) {
                const std::size_t ac = metric(a, c);
                const std::size_t bc = metric(b, c);
                triangle.expect(ac <= ab + bc, a, b, c);
                if (ac == ab + bc) {
                    ++tight;
                    if (!tight_example && !(a == b) && !(b == c) && !(a == c)) {
                        tight_example = "d(" + to_string(a) + ", " + to_string(c) + ") = " + std::to_string(ac) +
                                        " = d(" + to_string(a) + ", " + to_string(b) + ") + d(" + to_string(b) +
                                        ", " + to_string(c) + ")";
                    }
                }
            }
        }
    }

    // Power-of-two carrier, so the modulus is unbiased and platform stable.
    Axiom chain("chain inequality (n = 4)");
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < chain_samples; ++s) {
        std::vector<ConcreteSet> c;
        for (int k = 0; k < 4; ++k) c.push_back(ps[rng() % ps.size()]);
        const std::size_t sum = metric(c[0], c[1]) + metric(c[1], c[2]) + metric(c[2], c[3]);
        chain.expect(metric(c[0], c[3]) <= sum, c[0], c[1], c[2], c[3]);
    }

    out.axioms.push_back(identity.take());
    out.axioms.push_back(symmetry.take());
    out.axioms.push_back(triangle.take());
    out.axioms.push_back(chain.take());
    out.extras.push_back({"tight triangle triples", std::to_string(tight)});
    out.extras.push_back({"tight triangle example", tight_example.value_or("none")});
    return out;
}

StructureReport map_property_scan(const MapSpec& spec, const UniverseRef& u) {
    require_small(u, kMaxScanPoints);
    if (spec.parameters.size() > 3) throw LimitError("more than 3 map parameters");
    if (spec.surjective_when && spec.codomain.empty()) throw CodomainUnspecifiedError();
    if (spec.inverse && spec.codomain.empty()) throw CodomainUnspecifiedError();
    if (!spec.codomain.empty() && spec.codomain.size() != spec.components.size()) {
        throw StatementError("codomain has " + std::to_string(spec.codomain.size()) + " factors for " +
                             std::to_string(spec.components.size()) + " components");
    }
    for (const auto& c : spec.components) {
        if (c->arity() != 1) throw ArityError("map component '" + to_string(c) + "' must have arity 1");
        if (!atoms(c).count("X")) throw StatementError("map component '" + to_string(c) + "' does not mention X");
    }

    const auto ps = powerset(u);
    const std::size_t n = u->size();
    const std::size_t k = spec.parameters.size();
    const std::size_t width = spec.components.size();

    StructureReport out;
    out.structure = spec.name;
    out.universe_size = n;

    std::optional<Axiom> injective_ax;
    std::optional<Axiom> surjective_ax;
    std::optional<Axiom> within_ax;
    std::optional<Axiom> inverse_ax;
    if (spec.injective_when) injective_ax.emplace("injective iff " + to_string(*spec.injective_when));
    if (spec.surjective_when) surjective_ax.emplace("surjective iff " + to_string(*spec.surjective_when));
    if (!spec.codomain.empty()) within_ax.emplace("image within codomain");
    if (spec.inverse) inverse_ax.emplace("inverse " + to_string(spec.inverse));

    std::uint64_t assignments = 0, injective_count = 0, surjective_count = 0;
    const std::size_t total = [&] {
        std::size_t t = 1;
        for (std::size_t i = 0; i < k; ++i) t *= ps.size();
        return t;
    }();
    for (std::size_t idx = 0; idx < total; ++idx) {
        Environment env;
        std::vector<ConcreteSet> params;
        std::size_t rest = idx;
        for (std::size_t i = 0; i < k; ++i) {
            params.push_back(ps[rest % ps.size()]);
            rest /= ps.size();
            env.insert_or_assign(spec.parameters[i], params.back());
        }
        if (!std::all_of(spec.side_conditions.begin(), spec.side_conditions.end(),
                         [&](const Equation& eq) { return holds(eq, env, u); })) {
            continue;
        }
        ++assignments;

        // Image of every X, keyed by the concatenated component masks.
        std::map<std::size_t, std::size_t> image;
        bool injective = true;
        bool within = true;
        std::vector<std::pair<ConcreteSet, ConcreteSet>> bounds;
        for (const auto& f : spec.codomain) bounds.emplace_back(value_of(f.lower, env, u), value_of(f.upper, env, u));
        for (std::size_t x = 0; x < ps.size(); ++x) {
            env.insert_or_assign("X", ps[x]);
            std::size_t key = 0;
            for (std::size_t c = 0; c < width; ++c) {
                const ConcreteSet y = value_of(spec.components[c], env, u);
                if (!bounds.empty() && !(bounds[c].first.subset_of(y) && y.subset_of(bounds[c].second))) within = false;
                key |= mask_of(y) << (c * n);
            }
            injective = image.emplace(key, x).second && injective;
        }
        env.erase("X");
        injective_count += injective;

        bool surjective = false;
        std::vector<std::vector<ConcreteSet>> targets;
        if (!bounds.empty()) {
            // Every tuple of the product of intervals.
            std::vector<std::vector<ConcreteSet>> factors(width);
            std::size_t count = 1;
            for (std::size_t c = 0; c < width; ++c) {
                for (const auto& y : ps) {
                    if (bounds[c].first.subset_of(y) && y.subset_of(bounds[c].second)) factors[c].push_back(y);
                }
                count *= factors[c].size();
            }
            surjective = true;
            for (std::size_t t = 0; t < count; ++t) {
                std::vector<ConcreteSet> tuple;
                std::size_t key = 0;
                std::size_t r = t;
                for (std::size_t c = 0; c < width; ++c) {
                    tuple.push_back(factors[c][r % factors[c].size()]);
                    r /= factors[c].size();
                    key |= mask_of(tuple.back()) << (c * n);
                }
                if (!image.count(key)) surjective = false;
                targets.push_back(std::move(tuple));
            }
            surjective_count += surjective;
            if (within) {
                within_ax->pass();
            } else {
                within_ax->fail(params);
            }
        }

        if (injective_ax) {
            const bool predicted = holds(*spec.injective_when, env, u);
            if (predicted == injective) {
                injective_ax->pass();
            } else {
                injective_ax->fail(params);
            }
        }
        if (surjective_ax) {
            const bool predicted = holds(*spec.surjective_when, env, u);
            if (predicted == surjective) {
                surjective_ax->pass();
            } else {
                surjective_ax->fail(params);
            }
        }
        if (inverse_ax && injective && surjective && within) {
            bool ok = true;
            // inverse(f(X)) = X for every X, and f(inverse(Y)) = Y for every codomain tuple Y.
            for (const auto& [key, x] : image) {
                Environment e2 = env;
                for (std::size_t c = 0; c < width; ++c) {
                    std::vector<bool> bits(n);
                    for (std::size_t i = 0; i < n; ++i) bits[i] = key >> (c * n + i) & 1;
                    e2.insert_or_assign("Y" + std::to_string(c + 1), ConcreteSet(u, std::move(bits)));
                }
                ok = ok && value_of(spec.inverse, e2, u) == ps[x];
            }
            for (const auto& tuple : targets) {
                Environment e2 = env;
                for (std::size_t c = 0; c < width; ++c) e2.insert_or_assign("Y" + std::to_string(c + 1), tuple[c]);
                e2.insert_or_assign("X", value_of(spec.inverse, e2, u));
                for (std::size_t c = 0; c < width; ++c) ok = ok && value_of(spec.components[c], e2, u) == tuple[c];
            }
            if (ok) {
                inverse_ax->pass();
            } else {
                inverse_ax->fail(params);
            }
        }
    }

    for (auto* ax : {&injective_ax, &surjective_ax, &within_ax, &inverse_ax}) {
        if (*ax) out.axioms.push_back((*ax)->take());
    }
    out.extras.push_back({"parameter assignments", std::to_string(assignments)});
    out.extras.push_back({"injective assignments", std::to_string(injective_count)});
    if (!spec.codomain.empty()) out.extras.push_back({"surjective assignments", std::to_string(surjective_count)});
    return out;
}

std::vector<MapSpec> standard_map_specs() {
    const auto e = [](const char* text) { return parse_expr(text); };
    const auto eq = [](const char* text) { return parse_equation(text); };
    std::vector<MapSpec> specs;

    MapSpec union_pair;
    union_pair.name = "union-pair";
    union_pair.parameters = {"B", "C"};
    union_pair.components = {e("X | B"), e("X | C")};
    union_pair.side_conditions = {eq("B | C = U")};
    union_pair.injective_when = eq("B & C = 0");
    specs.push_back(union_pair);

    MapSpec union_triple;
    union_triple.name = "union-triple";
    union_triple.parameters = {"A1", "A2", "A3"};
    union_triple.components = {e("X | A1"), e("X | A2"), e("X | A3")};
    union_triple.side_conditions = {eq("A1 | A2 | A3 = U")};
    union_triple.injective_when = eq("A1 & A2 & A3 = 0");
    specs.push_back(union_triple);

    MapSpec meet_pair;
    meet_pair.name = "intersect-pair";
    meet_pair.parameters = {"A", "B"};
    meet_pair.components = {e("X & A"), e("X & B")};
    meet_pair.injective_when = eq("A | B = U");
    meet_pair.codomain = {{e("0"), e("A")}, {e("0"), e("B")}};
    meet_pair.surjective_when = eq("A & B = 0");
    meet_pair.inverse = e("Y1 | Y2");
    specs.push_back(meet_pair);

    MapSpec meet_triple;
    meet_triple.name = "intersect-triple";
    meet_triple.parameters = {"A1", "A2", "A3"};
    meet_triple.components = {e("X & A1"), e("X & A2"), e("X & A3")};
    meet_triple.injective_when = eq("A1 | A2 | A3 = U");
    meet_triple.codomain = {{e("0"), e("A1")}, {e("0"), e("A2")}, {e("0"), e("A3")}};
    meet_triple.surjective_when = eq("A1 & A2 | A1 & A3 | A2 & A3 = 0");
    meet_triple.inverse = e("Y1 | Y2 | Y3");
    specs.push_back(meet_triple);

    MapSpec interval;
    interval.name = "meet-join";
    interval.parameters = {"A"};
    interval.components = {e("X & A"), e("X | A")};
    interval.injective_when = eq("0 = 0");
    interval.codomain = {{e("0"), e("A")}, {e("A"), e("U")}};
    interval.surjective_when = eq("0 = 0");
    interval.inverse = e("(Y2 - A) | Y1");
    specs.push_back(interval);

    MapSpec diff;
    diff.name = "difference";
    diff.parameters = {"A"};
    diff.components = {e("A - X")};
    diff.injective_when = eq("A = U");
    diff.codomain = {{e("0"), e("U")}};
    diff.surjective_when = eq("A = U");
    diff.inverse = e("A - Y1");
    specs.push_back(diff);

    MapSpec sym;
    sym.name = "symdiff";
    sym.parameters = {"A"};
    sym.components = {e("A ^ X")};
    sym.injective_when = eq("0 = 0");
    sym.codomain = {{e("0"), e("U")}};
    sym.surjective_when = eq("0 = 0");
    sym.inverse = e("A ^ Y1");
    specs.push_back(sym);

    return specs;
}

std::optional<std::vector<ConcreteSet>> find_distinct_equal_triple_unions(const UniverseRef& u) {
    require_small(u, kMaxStructurePoints);
    const auto ps = powerset(u);
    for (const auto& a : ps) {
        for (const auto& b : ps) {
            if (b == a) continue;
            for (const auto& c : ps) {
                if (c == a || c == b) continue;
                for (const auto& d : ps) {
                    if (d == a || d == b || d == c) continue;
                    const ConcreteSet abc = a | b | c;
                    if (abc == (a | b | d) && abc == (a | c | d) && abc == (b | c | d)) {
                        return std::vector<ConcreteSet>{a, b, c, d};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::string render_text(const StructureReport& r) {
    std::size_t w = 5;
    for (const auto& a : r.axioms) w = std::max(w, a.name.size());
    std::ostringstream os;
    os << "structure: " << r.structure << "\n";
    os << "universe size: " << r.universe_size << "\n";
    os << std::left << std::setw(static_cast<int>(w + 2)) << "axiom" << std::setw(8) << "status" << std::setw(9)
       << "checked"
       << "counterexample\n";
    for (const auto& a : r.axioms) {
        std::string cx = "-";
        if (!a.counterexample.empty()) {
            cx.clear();
            for (std::size_t i = 0; i < a.counterexample.size(); ++i) {
                if (i) cx += ", ";
                cx += to_string(a.counterexample[i]);
            }
        }
        os << std::setw(static_cast<int>(w + 2)) << a.name << std::setw(8) << (a.passed ? "pass" : "FAIL")
           << std::setw(9) << a.checked << cx << "\n";
    }
    for (const auto& [k, v] : r.extras) os << k << ": " << v << "\n";
    os << "result: " << (r.passed() ? "pass" : "FAIL") << "\n";
    return os.str();
}

std::string render_json(const StructureReport& r) {
    nlohmann::ordered_json j;
    j["structure"] = r.structure;
    j["universe_size"] = r.universe_size;
    j["passed"] = r.passed();
    j["axioms"] = nlohmann::ordered_json::array();
    for (const auto& a : r.axioms) {
        nlohmann::ordered_json cx = nlohmann::ordered_json::array();
        for (const auto& s : a.counterexample) cx.push_back(s.labels());
        j["axioms"].push_back({{"axiom", a.name},
                               {"status", a.passed ? "pass" : "fail"},
                               {"checked", a.checked},
                               {"counterexample", a.counterexample.empty() ? nlohmann::ordered_json() : cx}});
    }
    nlohmann::ordered_json extras = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.extras) extras[k] = v;
    j["extras"] = extras;
    return j.dump(2);
}

} // namespace setcalc
