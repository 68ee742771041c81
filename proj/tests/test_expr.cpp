#include <random>
#include <string>

#include "doctest.h"
#include "gen.hpp"
#include "setcalc/errors.hpp"
#include "setcalc/expr.hpp"

using namespace setcalc;

namespace {

const Identity& identity_of(const Statement& s) { return std::get<Identity>(s); }

} // namespace

TEST_CASE("commutativity statement parses into an identity") {
    const Statement s = parse("A & B = B & A");
    const auto& id = identity_of(s);
    CHECK(id.hypotheses.empty());
    CHECK(same(id.goal.lhs, intersect(atom("A"), atom("B"))));
    CHECK(same(id.goal.rhs, intersect(atom("B"), atom("A"))));
}

TEST_CASE("& binds tighter than |") {
    CHECK(same(parse_expr("A | B & M"), unite(atom("A"), intersect(atom("B"), atom("M")))));
}

TEST_CASE("distributivity over two sets") {
    const Statement s = parse("(A | B) & M = (A & M) | (B & M)");
    const auto& id = identity_of(s);
    CHECK(same(id.goal.lhs, intersect(unite(atom("A"), atom("B")), atom("M"))));
    CHECK(same(id.goal.rhs, unite(intersect(atom("A"), atom("M")), intersect(atom("B"), atom("M")))));
}

TEST_CASE("mismatched arities are rejected") {
    CHECK_THROWS_AS(parse("A * B = B"), ArityError);
    CHECK_THROWS_AS(parse_expr("A * B | C"), ArityError);
    CHECK_THROWS_AS(intersect(product(atom("A"), atom("B")), atom("C")), ArityError);
}

TEST_CASE("printing uses minimal parentheses") {
    CHECK(to_string(intersect(atom("A"), atom("B"))) == "A & B");
    CHECK(to_string(unite(atom("A"), intersect(atom("B"), atom("M")))) == "A | B & M");
    CHECK(to_string(difference(difference(atom("A"), atom("B")), atom("C"))) == "A - B - C");
    CHECK(to_string(difference(atom("A"), difference(atom("B"), atom("C")))) == "A - (B - C)");
    CHECK(to_string(complement(unite(atom("A"), atom("B")))) == "~(A | B)");
    CHECK(to_string(product(atom("A"), product(atom("B"), atom("C")))) == "A * (B * C)");
    CHECK(to_string(empty_set()) == "0");
    CHECK(to_string(universal_set()) == "U");
}

TEST_CASE("mixed - and ^ chains are always parenthesized") {
    CHECK(to_string(symdiff(difference(atom("A"), atom("B")), atom("C"))) == "(A - B) ^ C");
    CHECK(to_string(difference(symdiff(atom("A"), atom("B")), atom("C"))) == "(A ^ B) - C");
    CHECK(same(parse_expr("A - B ^ C"), symdiff(difference(atom("A"), atom("B")), atom("C"))));
}

TEST_CASE("arity of products") {
    CHECK(arity(atom("A")) == 1);
    CHECK(arity(product(atom("A"), product(atom("B"), atom("C")))) == 3);
    CHECK(arity(intersect(product(atom("A"), atom("B")), product(atom("C"), atom("D")))) == 2);
    CHECK(arity(complement(product(atom("A"), atom("B")))) == 2);
}

TEST_CASE("^ associates to the left") {
    CHECK(same(parse_expr("A ^ B ^ C"), symdiff(symdiff(atom("A"), atom("B")), atom("C"))));
    CHECK(same(parse_expr("A - B - C"), difference(difference(atom("A"), atom("B")), atom("C"))));
}

TEST_CASE("reserved names and identifiers") {
    CHECK(parse_expr("U")->op() == Op::universal);
    CHECK(parse_expr("0")->op() == Op::empty);
    CHECK_THROWS_AS(atom("U"), StatementError);
    CHECK(is_identifier("A_1"));
    CHECK_FALSE(is_identifier("1A"));
    CHECK(same(parse_expr("a"), atom("a")));
    CHECK_FALSE(same(parse_expr("a"), atom("A")));
}

TEST_CASE("conditional and solve statements") {
    const Statement s = parse("A & B = 0, C = U |- A ^ B = A | B");
    const auto& id = identity_of(s);
    CHECK(id.hypotheses.size() == 2);
    const auto solve = std::get<SolveRequest>(parse("solve X, Y : A ^ X ^ B = A ; A ^ Y ^ B = B"));
    CHECK(solve.unknowns == std::vector<std::string>{"X", "Y"});
    CHECK(solve.equations.size() == 2);
    CHECK(to_string(Statement{solve}) == "solve X, Y : A ^ X ^ B = A ; A ^ Y ^ B = B");
    // `solve` on its own is an ordinary set name
    CHECK(std::holds_alternative<Identity>(parse("solve = A")));
}

TEST_CASE("malformed solve requests") {
    CHECK_THROWS_AS(parse("solve X, X : X = A"), StatementError);
    CHECK_THROWS_AS(parse("solve X, Y : X = A"), StatementError);
    CHECK_THROWS_AS(parse("solve X : X * A = A * X"), ArityError);
    CHECK_THROWS_AS(parse("solve X : "), SyntaxError);
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse("A -");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 3);
    }
    try {
        parse("A | (B & C = A");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 11);
    }
    CHECK_THROWS_AS(parse("A = B, B = C"), SyntaxError);
    CHECK_THROWS_AS(parse("A = B |-"), SyntaxError);
    CHECK_THROWS_AS(parse("A $ B = C"), SyntaxError);
    CHECK_THROWS_AS(parse("1 = A"), SyntaxError);
    CHECK_THROWS_AS(parse(""), SyntaxError);
}

TEST_CASE("deep nesting is an error, not a crash") {
    const std::string deep = std::string(5000, '(') + "A" + std::string(5000, ')');
    CHECK_THROWS_AS(parse_expr(deep), SyntaxError);
    CHECK_THROWS_AS(parse_expr(std::string(5000, '~') + "A"), SyntaxError);
}

TEST_CASE("round trip over random expressions up to depth 8") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 3000; ++i) {
        const auto e = i % 2 ? testgen::random_expr(rng, testgen::abcd(), 8)
                             : testgen::random_typed_expr(rng, testgen::abcd(), 8, 1 + static_cast<int>(rng() % 3));
        const std::string text = to_string(e);
        INFO(text);
        REQUIRE(same(parse_expr(text), e));
    }
}

TEST_CASE("statement round trip") {
    for (const char* text : {"A & B = 0, C = U |- A ^ B = A | B", "A * B = B * A", "solve X : X | A = A"}) {
        const Statement s = parse(text);
        CHECK(to_string(parse(to_string(s))) == to_string(s));
    }
}

TEST_CASE("parser is total on random bytes") {
    std::mt19937_64 rng(11);
    const std::string alphabet = "AB01U~*&-^|()=,;: solve|-XY\t\n\x01\xff";
    for (int i = 0; i < 20000; ++i) {
        std::string text;
        const std::size_t len = rng() % 24;
        for (std::size_t k = 0; k < len; ++k) {
            text += rng() % 8 == 0 ? static_cast<char>(rng() % 256) : alphabet[rng() % alphabet.size()];
        }
        try {
            parse(text);
        } catch (const Error&) {
            // positioned or statement-level rejection is fine
        }
    }
}
