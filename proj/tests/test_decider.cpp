#include <random>

#include "corpus_util.hpp"
#include "doctest.h"
#include "gen.hpp"
#include "oracle.hpp"
#include "setcalc/concrete.hpp"
#include "setcalc/decider.hpp"
#include "setcalc/errors.hpp"
#include "setcalc/indicator.hpp"

using namespace setcalc;

namespace {

Identity identity(const char* text) { return std::get<Identity>(parse(text)); }

Pattern bits(std::initializer_list<std::pair<const char*, bool>> list) {
    Pattern pt;
    for (const auto& [name, bit] : list) pt[{name, 1}] = bit;
    return pt;
}

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& with) {
    switch (e->op()) {
    case Op::atom: {
        const auto it = with.find(e->name());
        return it == with.end() ? e : it->second;
    }
    case Op::empty:
    case Op::universal: return e;
    case Op::complement: return complement(substitute(e->left(), with));
    default: return binary(e->op(), substitute(e->left(), with), substitute(e->right(), with));
    }
}

} // namespace

TEST_CASE("identities") {
    CHECK(check_identity(identity("(A | B) & M = (A & M) | (B & M)")).valid());
    const Verdict diff = check_identity(identity("A - B = B - A"));
    REQUIRE_FALSE(diff.valid());
    CHECK(*diff.pattern == bits({{"A", true}, {"B", false}}));
    CHECK(check_identity(identity("(A-B)|(B-C)|(C-A) = (A|B|C) - (A&B&C)")).valid());
    CHECK(check_identity(identity("(A*B)&(B*A) = (A&B)*(A&B)")).valid());
    CHECK(check_identity(identity("(A*B*C)&(B*C*A)&(C*A*B) = (A&B&C)*(A&B&C)*(A&B&C)")).valid());
    CHECK_FALSE(check_identity(identity("A * B = B * A")).valid());
    CHECK_THROWS_AS(check_identity(identity("A = B |- A = B")), StatementError);
}

TEST_CASE("conditional identities") {
    CHECK(check_conditional(identity("A & B = 0 |- A ^ B = A | B")).valid());
    const Verdict bare = decide(identity("A ^ B = A | B"));
    REQUIRE_FALSE(bare.valid());
    CHECK(*bare.pattern == bits({{"A", true}, {"B", true}}));
    CHECK(decide(identity("A|B|C=D, A|B|D=C, A|C|D=B, B|C|D=A |- A = B")).valid());
    CHECK(decide(identity("M = 0 |- (A ^ B) | M = (A | M) ^ (B | M)")).valid());
    CHECK_FALSE(decide(identity("(A ^ B) | M = (A | M) ^ (B | M)")).valid());
}

TEST_CASE("vacuous hypotheses") {
    const Verdict v = decide(identity("A = 0, A = U |- B = C"));
    CHECK(v.valid());
    CHECK(v.vacuous);
    CHECK_FALSE(decide(identity("A & B = 0 |- A ^ B = A | B")).vacuous);
}

TEST_CASE("hypotheses of another arity are instantiated at every coordinate") {
    CHECK(decide(identity("A = B |- A * C = B * C")).valid());
    CHECK(decide(identity("A = B |- C * A = C * B")).valid());
    CHECK_FALSE(decide(identity("A = B |- A * C = C * A")).valid());
    // collapsing both coordinates makes the hypothesis trivially true
    CHECK_FALSE(decide(identity("A * B = B * A |- A = B")).valid());
    CHECK(decide(identity("A * U = B * U |- A = B")).valid());
}

TEST_CASE("witnesses") {
    const Identity sym = identity("A ^ B = A | B");
    const Witness w = witness_from_pattern(bits({{"A", true}, {"B", true}}), sym);
    CHECK(w.universe->points() == std::vector<std::string>{"p1"});
    CHECK(to_string(w.assignment.at("A")) == "{p1}");
    CHECK(to_string(w.assignment.at("B")) == "{p1}");
    CHECK(to_string(w.lhs_value) == "{}");
    CHECK(to_string(w.rhs_value) == "{p1}");

    const Witness d = witness_from_pattern(bits({{"A", true}, {"B", false}}), identity("A - B = B - A"));
    CHECK(to_string(d.assignment.at("A")) == "{p1}");
    CHECK(to_string(d.assignment.at("B")) == "{}");
    CHECK(to_string(d.lhs_value) == "{p1}");
    CHECK(to_string(d.rhs_value) == "{}");

    CHECK_THROWS_AS(witness_from_pattern(bits({{"A", false}, {"B", false}}), sym), NotACounterexampleError);
    CHECK_THROWS_AS(witness_from_pattern(bits({{"A", true}, {"B", true}}), identity("A & B = 0 |- A ^ B = A | B")),
                    NotACounterexampleError);

    const Identity swap = identity("A * B = B * A");
    const Verdict v = decide(swap);
    REQUIRE(v.witness);
    CHECK(v.witness->universe->size() == 2);
    CHECK(v.witness->sides_differ());
    CHECK(to_string(v.witness->assignment.at("A")) == "{p2}");
    CHECK(to_string(v.witness->assignment.at("B")) == "{p1}");
    CHECK(to_string(v.witness->lhs_value) == "{(p2, p1)}");
    CHECK(to_string(v.witness->rhs_value) == "{(p1, p2)}");
}

TEST_CASE("pattern enumeration") {
    const auto none = enumerate_patterns({});
    CHECK(none.size() == 1);
    CHECK((*none.begin()).empty());

    const auto two = enumerate_patterns({{"A", 1}, {"B", 1}});
    std::vector<Pattern> seen(two.begin(), two.end());
    REQUIRE(seen.size() == 4);
    CHECK(seen[0] == bits({{"A", false}, {"B", false}}));
    CHECK(seen[1] == bits({{"A", true}, {"B", false}}));
    CHECK(seen[2] == bits({{"A", false}, {"B", true}}));
    CHECK(seen[3] == bits({{"A", true}, {"B", true}}));

    const auto big = enumerate_patterns(indexed_vars(24));
    CHECK(big.size() == (1u << 24));
    CHECK(big[big.size() - 1].size() == 24);
    CHECK_THROWS_AS(enumerate_patterns(indexed_vars(25)), LimitError);
    CHECK_NOTHROW(enumerate_patterns(indexed_vars(25), 25));
}

TEST_CASE("guard applies to statements") {
    std::string lhs = "V0", rhs = "V0";
    for (int i = 1; i < 25; ++i) {
        lhs += " & V" + std::to_string(i);
        rhs = "V" + std::to_string(i) + " & " + rhs;
    }
    const Identity wide = identity((lhs + " = " + rhs).c_str());
    CHECK_THROWS_AS(decide(wide), LimitError);
    CHECK(decide(wide, 25).valid());
}

TEST_CASE("solving equation systems") {
    const auto sym = solve(std::get<SolveRequest>(parse("solve X, Y : A ^ X ^ B = A ; A ^ Y ^ B = B")));
    REQUIRE(sym.unique());
    CHECK(same(sym.solution_exprs[0], atom("B")));
    CHECK(same(sym.solution_exprs[1], atom("A")));
    CHECK(sym.solution_polys[0] == Poly::variable({"B", 1}));

    const auto free = solve(std::get<SolveRequest>(parse("solve X, Y : A | X | Y = (A|X) & (A|Y) ; A & X & Y = (A&X) | (A&Y)")));
    CHECK(free.solvable());
    CHECK_FALSE(free.unique());
    REQUIRE(free.rows.size() == 2);
    for (const auto& row : free.rows) CHECK(row == std::vector<std::uint32_t>{0, 3});

    const auto none = solve(std::get<SolveRequest>(parse("solve X : X & ~X = U")));
    CHECK_FALSE(none.solvable());
    for (const auto& row : none.rows) CHECK(row.empty());

    const auto diff = solve(std::get<SolveRequest>(parse("solve X : A | X = A | B ; A & X = 0")));
    REQUIRE(diff.unique());
    CHECK(to_string(diff.solution_exprs[0]) == "B - A");
    CHECK(to_string(diff.solution_polys[0]) == "B - A*B");
}

TEST_CASE("express recovers a set expression for every truth table") {
    std::mt19937_64 rng(31);
    for (int n = 0; n <= 4; ++n) {
        const auto params = indexed_vars(n);
        for (int i = 0; i < 60; ++i) {
            std::vector<bool> table(std::size_t{1} << n);
            std::vector<std::int64_t> values;
            for (std::size_t k = 0; k < table.size(); ++k) {
                table[k] = rng() & 1;
                values.push_back(table[k]);
            }
            const ExprPtr e = express(params, table);
            REQUIRE(poly_from_expr(e) == poly_from_values(params, values));
        }
    }
    const std::vector<Var> ab{{"A", 1}, {"B", 1}};
    CHECK(to_string(express(ab, {false, true, false, false})) == "A - B");
    CHECK(to_string(express(ab, {false, true, true, false})) == "A ^ B");
    CHECK(to_string(express(ab, {true, true, true, true})) == "U");
    CHECK(to_string(express(ab, {false, false, false, false})) == "0");
}

TEST_CASE("unique solutions satisfy their equations") {
    std::mt19937_64 rng(41);
    const std::vector<std::string> names{"A", "B", "X"};
    int unique = 0;
    for (int i = 0; i < 400; ++i) {
        SolveRequest req{{"X"}, {}};
        const int count = 1 + static_cast<int>(rng() % 2);
        for (int k = 0; k < count; ++k) {
            req.equations.push_back({testgen::random_expr(rng, names, 3), testgen::random_expr(rng, names, 3)});
        }
        bool mentions = false;
        for (const auto& eq : req.equations) mentions = mentions || atoms(eq.lhs).count("X") || atoms(eq.rhs).count("X");
        if (!mentions) continue;
        const auto t = solve(req);
        if (!t.unique()) continue;
        ++unique;
        for (const auto& eq : req.equations) {
            const std::map<std::string, ExprPtr> with{{"X", t.solution_exprs[0]}};
            Identity id{{}, {substitute(eq.lhs, with), substitute(eq.rhs, with)}};
            REQUIRE(decide(id).valid());
        }
    }
    CHECK(unique > 20);
}

TEST_CASE("both routes agree with the reference semantics on random identities") {
    std::mt19937_64 rng(2024);
    int invalid = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto lhs = testgen::random_expr(rng, testgen::abcd(), 6);
        const auto rhs = i % 2 ? testgen::equivalent_rewrite(rng, lhs) : testgen::random_expr(rng, testgen::abcd(), 6);
        Identity id{{}, {lhs, rhs}};
        const bool normal_form = poly_from_expr(lhs) == poly_from_expr(rhs);
        const long refutation = testgen::least_refutation(id);
        REQUIRE(normal_form == (refutation < 0));
        const Verdict v = decide(id);
        REQUIRE(v.valid() == normal_form);
        if (v.valid()) continue;
        ++invalid;
        // least pattern, and a witness that really separates the sides
        const auto names = testgen::names_of(id);
        const auto want = testgen::bits_at(names, static_cast<unsigned>(refutation));
        for (const auto& [name, bit] : want) REQUIRE(v.pattern->at({name, 1}) == bit);
        REQUIRE(v.witness);
        REQUIRE(v.witness->sides_differ());
        const auto& u = v.witness->universe;
        REQUIRE(!(eval_expr(lhs, v.witness->assignment, u) == eval_expr(rhs, v.witness->assignment, u)));
    }
    CHECK(invalid > 100);
    CHECK(invalid < 900);
}

TEST_CASE("invalid identities over three atoms are refuted on one point") {
    std::mt19937_64 rng(77);
    const std::vector<std::string> names{"A", "B", "C"};
    const auto u = make_universe(1);
    const auto subsets = powerset(u);
    for (int i = 0; i < 300; ++i) {
        Identity id{{}, {testgen::random_expr(rng, names, 4), testgen::random_expr(rng, names, 4)}};
        const Verdict v = decide(id);
        if (v.valid()) continue;
        bool found = false;
        for (const auto& a : subsets)
            for (const auto& b : subsets)
                for (const auto& c : subsets) {
                    const Environment env{{"A", a}, {"B", b}, {"C", c}};
                    found = found || !(eval_expr(id.goal.lhs, env, u) == eval_expr(id.goal.rhs, env, u));
                }
        REQUIRE(found);
        Environment from_pattern;
        for (const auto& name : names) from_pattern[name] = ConcreteSet(u);
        for (const auto& [var, bit] : *v.pattern) from_pattern[var.set] = ConcreteSet(u, {bit});
        REQUIRE(!(eval_expr(id.goal.lhs, from_pattern, u) == eval_expr(id.goal.rhs, from_pattern, u)));
    }
}

TEST_CASE("adding hypotheses never breaks a valid identity") {
    std::mt19937_64 rng(55);
    int valid = 0;
    for (int i = 0; i < 3000 && valid < 150; ++i) {
        Identity id{{}, {testgen::random_expr(rng, testgen::abcd(), 3), testgen::random_expr(rng, testgen::abcd(), 3)}};
        if (!decide(id).valid()) continue;
        ++valid;
        for (int k = 0; k < 3; ++k) {
            id.hypotheses.push_back({testgen::random_expr(rng, testgen::abcd(), 3), testgen::random_expr(rng, testgen::abcd(), 3)});
            REQUIRE(decide(id).valid());
        }
    }
    CHECK(valid >= 150);
}

TEST_CASE("shipped corpus: reference semantics agree with the decider") {
    for (const auto& entry : testgen::load_corpus(testgen::shipped_corpus_path())) {
        const auto* id = std::get_if<Identity>(&entry.statement);
        if (!id) continue;
        bool products = arity(id->goal.lhs) > 1;
        for (const auto& h : id->hypotheses) products = products || arity(h.lhs) > 1;
        const Verdict v = decide(*id);
        INFO(entry.id);
        if (!products) CHECK(v.valid() == (testgen::least_refutation(*id) < 0));
        if (!v.valid()) {
            REQUIRE(v.witness);
            CHECK(v.witness->sides_differ());
        }
    }
}
