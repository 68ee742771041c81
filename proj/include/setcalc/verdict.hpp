#pragma once

#include <cstdint>
#include <optional>

#include "setcalc/concrete.hpp"
#include "setcalc/indicator.hpp"

namespace setcalc {

// Concrete refutation: a finite universe, an assignment of the statement's
// sets, and the two unequal values of the goal's sides.
struct Witness {
    UniverseRef universe;
    Environment assignment;
    SetValue lhs_value;
    SetValue rhs_value;

    bool sides_differ() const { return !(lhs_value == rhs_value); }
};

enum class Status { valid, invalid };

struct Verdict {
    Status status = Status::valid;
    // Valid only because no membership pattern satisfies the hypotheses.
    bool vacuous = false;
    // Sampling found no discrepancy; says nothing about validity.
    bool inconclusive = false;
    std::optional<Pattern> pattern;
    std::optional<Witness> witness;

    bool valid() const noexcept { return status == Status::valid; }
};

// Evaluates both goal sides of `stmt` under env.
Witness build_witness(const UniverseRef& u, const Environment& env, const Identity& stmt);

// True when every hypothesis of `stmt` holds as a set equality under env.
bool hypotheses_hold(const Identity& stmt, const Environment& env, const UniverseRef& u);

// Names of every atom in the hypotheses and the goal.
std::set<std::string> statement_atoms(const Identity& stmt);

// Membership bit used by random_model_check for (seed, trial, set, point):
//   h = mix(seed); h = mix(h ^ trial); h = mix(h ^ fnv1a64(set)); h = mix(h ^ point)
//   bit = popcount(h) mod 2
// where mix(z) is one SplitMix64 step: add 0x9e3779b97f4a7c15, then the
// usual xor-shift-multiply finalizer. This is stable across platforms.
bool sample_bit(std::uint64_t seed, std::uint64_t trial, const std::string& set, std::uint64_t point);

// Refutation-only sampling over a universe of `universe_size` points. Trials
// whose hypotheses fail are skipped. Returns the first (lowest trial)
// discrepancy as Invalid; otherwise Valid with `inconclusive` set.
Verdict random_model_check(const Identity& stmt, std::uint64_t trials, std::size_t universe_size,
                           std::uint64_t seed);

} // namespace setcalc
