#include "setcalc/verdict.hpp"

#include <bit>

namespace setcalc {

namespace {

std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

Witness build_witness(const UniverseRef& u, const Environment& env, const Identity& stmt) {
    return {u, env, eval_expr(stmt.goal.lhs, env, u), eval_expr(stmt.goal.rhs, env, u)};
}

bool hypotheses_hold(const Identity& stmt, const Environment& env, const UniverseRef& u) {
    for (const auto& h : stmt.hypotheses) {
        if (!(eval_expr(h.lhs, env, u) == eval_expr(h.rhs, env, u))) return false;
    }
    return true;
}

std::set<std::string> statement_atoms(const Identity& stmt) {
    std::set<std::string> names = atoms(stmt.goal.lhs);
    names.merge(atoms(stmt.goal.rhs));
    for (const auto& h : stmt.hypotheses) {
        names.merge(atoms(h.lhs));
        names.merge(atoms(h.rhs));
    }
    return names;
}

bool sample_bit(std::uint64_t seed, std::uint64_t trial, const std::string& set, std::uint64_t point) {
    std::uint64_t h = mix(seed);
    h = mix(h ^ trial);
    h = mix(h ^ fnv1a64(set));
    h = mix(h ^ point);
    return std::popcount(h) % 2 == 1;
}

Verdict random_model_check(const Identity& stmt, std::uint64_t trials, std::size_t universe_size,
                           std::uint64_t seed) {
    const UniverseRef u = make_universe(universe_size);
    const auto names = statement_atoms(stmt);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Environment env;
        for (const auto& name : names) {
            std::vector<bool> bits(universe_size);
            for (std::size_t i = 0; i < universe_size; ++i) bits[i] = sample_bit(seed, t, name, i);
            env.emplace(name, ConcreteSet(u, std::move(bits)));
        }
        if (!hypotheses_hold(stmt, env, u)) continue;
        Witness w = build_witness(u, env, stmt);
        if (w.sides_differ()) {
            Verdict v;
            v.status = Status::invalid;
            v.witness = std::move(w);
            return v;
        }
    }
    Verdict v;
    v.inconclusive = true;
    return v;
}

} // namespace setcalc
