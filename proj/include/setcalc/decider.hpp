#pragma once

#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "setcalc/indicator.hpp"
#include "setcalc/verdict.hpp"

namespace setcalc {

// All 2^n membership patterns over an ordered variable list. Pattern k sets
// vars[i] iff bit i of k is set, so the first variable varies fastest and
// index order is the tie-break order for counterexamples.
class PatternRange {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Pattern;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = Pattern;

        iterator(const PatternRange* range, std::uint64_t index) : range_(range), index_(index) {}
        Pattern operator*() const { return (*range_)[index_]; }
        iterator& operator++() {
            ++index_;
            return *this;
        }
        iterator operator++(int) {
            iterator old = *this;
            ++index_;
            return old;
        }
        bool operator==(const iterator& o) const { return index_ == o.index_; }

    private:
        const PatternRange* range_;
        std::uint64_t index_;
    };

    PatternRange(std::vector<Var> vars, int guard);

    std::uint64_t size() const noexcept { return std::uint64_t{1} << vars_.size(); }
    const std::vector<Var>& vars() const noexcept { return vars_; }
    Pattern operator[](std::uint64_t index) const;
    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, size()}; }

private:
    std::vector<Var> vars_;
};

// Throws LimitError when vars.size() > guard.
PatternRange enumerate_patterns(std::vector<Var> vars, int guard = kDefaultGuard);

// The variables a decision for `stmt` ranges over: the goal's coordinates
// 1..arity plus every hypothesis instantiated at every assignment of its
// coordinates to goal coordinates.
std::vector<Var> statement_variables(const Identity& stmt);

// Identity without hypotheses. Decided twice, by normal-form equality and by
// exhaustive pattern enumeration; the two must agree.
// Throws StatementError if hypotheses are present, LimitError, OverflowError.
Verdict check_identity(const Identity& stmt, int guard = kDefaultGuard);

// Identity whose hypotheses restrict the admissible patterns pointwise.
// Valid with `vacuous` set when no pattern satisfies the hypotheses.
Verdict check_conditional(const Identity& stmt, int guard = kDefaultGuard);

// Dispatches to check_identity or check_conditional.
Verdict decide(const Identity& stmt, int guard = kDefaultGuard);

// One point per goal coordinate (p1..pr); point p_i is in S iff
// pt[S@i] = 1. Throws NotACounterexampleError unless the result violates
// the goal while satisfying every hypothesis.
Witness witness_from_pattern(const Pattern& pt, const Identity& stmt);

struct SolutionTable {
    std::vector<Var> parameters;
    std::vector<std::string> unknowns;
    // rows[k]: allowed unknown vectors at parameter pattern k, ascending.
    // Bit j of a vector is the membership bit of unknowns[j].
    std::vector<std::vector<std::uint32_t>> rows;
    // Filled when every row has exactly one entry, one per unknown.
    std::vector<Poly> solution_polys;
    std::vector<ExprPtr> solution_exprs;

    bool solvable() const;
    bool unique() const;
};

// Pointwise solution of an equation system for the listed unknowns.
SolutionTable solve(const SolveRequest& req, int guard = kDefaultGuard);

// Smallest set expression over `params` (arity 1) with the given truth
// table, where bit k of `table` is the value at parameter pattern k. Falls
// back to a union of minterms when the search budget runs out.
ExprPtr express(std::span<const Var> params, const std::vector<bool>& table);

} // namespace setcalc
