#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "setcalc/concrete.hpp"
#include "setcalc/expr.hpp"

namespace setcalc {

inline constexpr std::size_t kMaxStructurePoints = 4;
inline constexpr std::size_t kMaxScanPoints = 3;

struct AxiomResult {
    std::string name;
    bool passed = true;
    // Instances examined.
    std::uint64_t checked = 0;
    // First failing instance; empty when passed.
    std::vector<ConcreteSet> counterexample;
};

struct StructureReport {
    std::string structure;
    std::size_t universe_size = 0;
    std::vector<AxiomResult> axioms;
    // Named facts, e.g. an exhibited zero-divisor pair.
    std::vector<std::pair<std::string, std::string>> extras;

    bool passed() const;
    const AxiomResult* axiom(const std::string& name) const;
    const std::string* extra(const std::string& name) const;
};

enum class MonoidOp { unite, intersect };

// Closure, associativity, commutativity and neutral element of (P(E), op).
StructureReport check_monoid(MonoidOp op, const UniverseRef& u);
// (P(E), ^) as an abelian group in which every element is its own inverse.
StructureReport check_group_symdiff(const UniverseRef& u);
// (P(E), ^, &) as a commutative Boolean ring; reports a zero-divisor pair
// when one exists.
StructureReport check_boolean_ring(const UniverseRef& u);
// A -> f_A as an isomorphism from (P(E), ^) onto 0/1 tables under
// f + g - 2fg.
StructureReport check_isomorphism(const UniverseRef& u);
// d(A, B) = |A ^ B| as a metric on P(E), plus `chain_samples` seeded random
// chains A1..A4 for d(A1, A4) <= d(A1, A2) + d(A2, A3) + d(A3, A4).
StructureReport check_metric_space(const UniverseRef& u, std::uint64_t seed = 0, std::size_t chain_samples = 1000);

// Component i of the codomain is the interval {Y : lower_i <= Y <= upper_i},
// with bounds written over the parameters. P(A) is [0, A].
struct CodomainFactor {
    ExprPtr lower;
    ExprPtr upper;
};

// A map X -> (components...) on P(E) with set parameters, together with the
// conditions on the parameters under which it is claimed to be injective
// or surjective.
struct MapSpec {
    std::string name;
    std::vector<std::string> parameters;
    // Arity-1 expressions over X and the parameters.
    std::vector<ExprPtr> components;
    // Parameter assignments violating these are skipped.
    std::vector<Equation> side_conditions;
    std::optional<Equation> injective_when;
    std::optional<Equation> surjective_when;
    std::vector<CodomainFactor> codomain;
    // Claimed inverse over the parameters and the component names Y1..Yn.
    ExprPtr inverse;
};

// Exhaustive scan over every parameter assignment on u: computes
// injectivity (and surjectivity onto the declared codomain) and checks each
// against its predicted condition in both directions.
// Throws CodomainUnspecifiedError, LimitError.
StructureReport map_property_scan(const MapSpec& spec, const UniverseRef& u);

// The injectivity/surjectivity claims about set-valued maps shipped with the
// tool: X -> (X | B, X | C) under B | C = U, X -> (X & A, X & B) with its
// n = 3 generalization, X -> (X & A, X | A), X -> A - X and X -> A ^ X.
std::vector<MapSpec> standard_map_specs();

// Looks for pairwise distinct A, B, C, D on u with all four triple unions
// equal; returns the first in enumeration order.
std::optional<std::vector<ConcreteSet>> find_distinct_equal_triple_unions(const UniverseRef& u);

// `axiom  status  checked  counterexample` table.
std::string render_text(const StructureReport& r);
std::string render_json(const StructureReport& r);

} // namespace setcalc
