#include <random>

#include "corpus_util.hpp"
#include "doctest.h"
#include "gen.hpp"
#include "setcalc/concrete.hpp"
#include "setcalc/errors.hpp"
#include "setcalc/indicator.hpp"
#include "setcalc/verdict.hpp"

using namespace setcalc;

namespace {

UniverseRef u123() { return std::make_shared<const Universe>(std::vector<std::string>{"1", "2", "3"}); }

ConcreteSet set_of(const UniverseRef& u, std::vector<std::string> labels) {
    return ConcreteSet::from_labels(u, labels);
}

ConcreteSet random_set(std::mt19937_64& rng, const UniverseRef& u) {
    std::vector<bool> bits(u->size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = rng() & 1;
    return ConcreteSet(u, bits);
}

const ConcreteSet& as_set(const SetValue& v) { return std::get<ConcreteSet>(v); }

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ULL;
    return h;
}

} // namespace

TEST_CASE("ground evaluation") {
    const auto u = u123();
    const Environment env{{"A", set_of(u, {"1", "2"})}, {"B", set_of(u, {"2", "3"})}};
    CHECK(as_set(eval_expr(parse_expr("A & B"), env, u)) == set_of(u, {"2"}));
    CHECK(as_set(eval_expr(parse_expr("A ^ B"), env, u)) == set_of(u, {"1", "3"}));
    CHECK(as_set(eval_expr(parse_expr("~A"), env, u)) == set_of(u, {"3"}));
    CHECK(as_set(eval_expr(parse_expr("U - A"), env, u)) == set_of(u, {"3"}));
    CHECK(as_set(eval_expr(parse_expr("0"), env, u)).empty());
    const Environment pair{{"A", set_of(u, {"1"})}, {"B", set_of(u, {"2"})}};
    const auto product = std::get<TupleSet>(eval_expr(parse_expr("A * B"), pair, u));
    CHECK(product.arity == 2);
    CHECK(product.members == std::set<std::vector<std::size_t>>{{0, 1}});
    CHECK(to_string(SetValue{product}) == "{(1, 2)}");
    CHECK(contains_tuple(parse_expr("A * B"), pair, std::vector<std::size_t>{0, 1}));
    CHECK_FALSE(contains_tuple(parse_expr("A * B"), pair, std::vector<std::size_t>{1, 0}));
    const auto co = std::get<TupleSet>(eval_expr(parse_expr("~(A * B)"), pair, u));
    CHECK(co.members.size() == 8);
}

TEST_CASE("evaluation errors") {
    const auto u = u123();
    const auto other = make_universe(3);
    CHECK_THROWS_AS(eval_expr(parse_expr("A | C"), {{"A", set_of(u, {"1"})}}, u), UnboundAtomError);
    CHECK_THROWS_AS(eval_expr(parse_expr("A"), {{"A", ConcreteSet(other)}}, u), UniverseMismatchError);
    CHECK_THROWS_AS(set_of(u, {"1"}) | ConcreteSet(other), UniverseMismatchError);
    CHECK_THROWS_AS(metric(set_of(u, {"1"}), ConcreteSet(other)), UniverseMismatchError);
    CHECK_THROWS(Universe(std::vector<std::string>{"a", "a"}));
    const auto wide = make_universe(20);
    const Environment env{{"A", ConcreteSet::full(wide)}};
    CHECK_THROWS_AS(eval_expr(parse_expr("A * A * A * A"), env, wide), LimitError);
}

TEST_CASE("universes compare by value") {
    CHECK(same_universe(make_universe(2), make_universe(2)));
    CHECK_FALSE(same_universe(make_universe(2), make_universe(3)));
    CHECK(make_universe(2)->index_of("p2") == 1);
    CHECK(to_string(ConcreteSet::from_labels(make_universe(3), {"p3", "p1"})) == "{p1, p3}");
    CHECK(to_string(ConcreteSet(make_universe(3))) == "{}");
}

TEST_CASE("symmetric-difference metric") {
    const auto u = u123();
    CHECK(metric(ConcreteSet(u), ConcreteSet(u)) == 0);
    CHECK(metric(set_of(u, {"1", "2"}), set_of(u, {"2", "3"})) == 2);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_set(rng, u);
        CHECK(metric(a, a) == 0);
    }
}

TEST_CASE("metric counts through cardinalities") {
    for (std::size_t n = 0; n <= 4; ++n) {
        const auto u = make_universe(n);
        const auto all = powerset(u);
        for (const auto& a : all)
            for (const auto& b : all)
                REQUIRE(metric(a, b) == a.cardinality() + b.cardinality() - 2 * (a & b).cardinality());
    }
}

TEST_CASE("union decomposes into differences and intersection") {
    const auto e = parse_expr("(A - B) | (B - A) | (A & B)");
    const auto f = parse_expr("A | B");
    for (std::size_t n = 0; n <= 4; ++n) {
        const auto u = make_universe(n);
        for (const auto& a : powerset(u))
            for (const auto& b : powerset(u)) {
                const Environment env{{"A", a}, {"B", b}};
                REQUIRE(eval_expr(e, env, u) == eval_expr(f, env, u));
            }
    }
}

TEST_CASE("powerset sizes") {
    CHECK(powerset(make_universe(0)).size() == 1);
    CHECK(powerset(make_universe(0))[0].empty());
    CHECK(powerset(make_universe(3)).size() == 8);
    CHECK(powerset(make_universe(4)).size() == 16);
    CHECK(powerset(make_universe(3))[5] == ConcreteSet::from_labels(make_universe(3), {"p1", "p3"}));
    CHECK_THROWS_AS(powerset(make_universe(17)), LimitError);
}

TEST_CASE("ground evaluation agrees with indicator polynomials") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 400; ++i) {
        const auto e = testgen::random_expr(rng, testgen::abcd(), 6);
        const Poly p = poly_from_expr(e);
        const auto u = make_universe(rng() % 5);
        Environment env;
        for (const auto& name : testgen::abcd()) env[name] = random_set(rng, u);
        const auto value = as_set(eval_expr(e, env, u));
        for (std::size_t point = 0; point < u->size(); ++point) {
            Pattern pt;
            for (const auto& name : testgen::abcd()) pt[{name, 1}] = env.at(name).contains(point);
            REQUIRE(value.contains(point) == (evaluate(p, pt) == 1));
        }
    }
}

TEST_CASE("product expressions agree with indicator polynomials") {
    std::mt19937_64 rng(23);
    const std::vector<std::string> names{"A", "B", "C"};
    for (int i = 0; i < 200; ++i) {
        const int r = 1 + static_cast<int>(rng() % 3);
        const auto e = testgen::random_typed_expr(rng, names, 4, r);
        const Poly p = poly_from_expr(e);
        const auto u = make_universe(1 + rng() % 3);
        Environment env;
        for (const auto& name : names) env[name] = random_set(rng, u);
        std::vector<std::size_t> tuple(r, 0);
        while (true) {
            Pattern pt;
            for (const auto& name : names)
                for (int c = 0; c < r; ++c) pt[{name, c + 1}] = env.at(name).contains(tuple[c]);
            REQUIRE(contains_tuple(e, env, tuple) == (evaluate(p, pt) == 1));
            int k = 0;
            while (k < r && ++tuple[k] == u->size()) tuple[k++] = 0;
            if (k == r) break;
        }
    }
}

TEST_CASE("sampling hash is the documented one") {
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL})
        for (std::uint64_t trial = 0; trial < 5; ++trial)
            for (std::uint64_t point = 0; point < 5; ++point)
                for (const std::string set : {"A", "B", "Xs"}) {
                    std::uint64_t h = splitmix(seed);
                    h = splitmix(h ^ trial);
                    h = splitmix(h ^ fnv(set));
                    h = splitmix(h ^ point);
                    REQUIRE(sample_bit(seed, trial, set, point) == (std::popcount(h) % 2 == 1));
                }
}

TEST_CASE("random refutation") {
    const Statement distrib = parse("(A | B) & M = (A & M) | (B & M)");
    const Verdict none = random_model_check(std::get<Identity>(distrib), 100, 4, 0);
    CHECK(none.valid());
    CHECK(none.inconclusive);

    const Statement bad = parse("A ^ B = A | B");
    const Verdict found = random_model_check(std::get<Identity>(bad), 100, 4, 0);
    REQUIRE_FALSE(found.valid());
    REQUIRE(found.witness);
    CHECK(found.witness->sides_differ());
    CHECK_FALSE((found.witness->assignment.at("A") & found.witness->assignment.at("B")).empty());

    const Verdict zero = random_model_check(std::get<Identity>(bad), 0, 4, 0);
    CHECK(zero.valid());
    CHECK(zero.inconclusive);

    // the hypothesis rules out every refuting sample
    const Statement guarded = parse("A & B = 0 |- A ^ B = A | B");
    CHECK(random_model_check(std::get<Identity>(guarded), 200, 4, 3).valid());
}

TEST_CASE("random refutation never contradicts a valid corpus entry") {
    std::size_t checked = 0;
    for (const auto& entry : testgen::load_corpus(testgen::shipped_corpus_path())) {
        if (entry.expectation != cli::Expectation::valid) continue;
        const auto& id = std::get<Identity>(entry.statement);
        INFO(entry.id);
        REQUIRE(random_model_check(id, 10000, 4, 17).valid());
        ++checked;
    }
    CHECK(checked >= 25);
}

TEST_CASE("empty universe") {
    const auto u = make_universe(0);
    const Environment env{{"A", ConcreteSet(u)}, {"B", ConcreteSet(u)}};
    CHECK(eval_expr(parse_expr("A ^ B"), env, u) == eval_expr(parse_expr("A | B"), env, u));
    CHECK(as_set(eval_expr(parse_expr("U"), env, u)).empty());
    CHECK(random_model_check(std::get<Identity>(parse("A ^ B = A | B")), 50, 0, 0).valid());
}
