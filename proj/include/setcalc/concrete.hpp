#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "setcalc/expr.hpp"

namespace setcalc {

// Finite ground set E. Labels are distinct; E may be empty.
class Universe {
public:
    Universe() = default;
    explicit Universe(std::vector<std::string> points);
    // Points labelled p1..pn.
    static Universe numbered(std::size_t n);

    const std::vector<std::string>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::string& label(std::size_t i) const { return points_.at(i); }
    // Throws Error for unknown labels.
    std::size_t index_of(const std::string& label) const;

    friend bool operator==(const Universe&, const Universe&) = default;

private:
    std::vector<std::string> points_;
};

using UniverseRef = std::shared_ptr<const Universe>;

UniverseRef make_universe(std::size_t n);

// Subset of a universe, stored as its tabulated characteristic function.
class ConcreteSet {
public:
    ConcreteSet() = default;
    // Empty subset of u.
    explicit ConcreteSet(UniverseRef u);
    ConcreteSet(UniverseRef u, std::vector<bool> membership);
    static ConcreteSet from_labels(UniverseRef u, const std::vector<std::string>& labels);
    static ConcreteSet full(UniverseRef u);

    const UniverseRef& universe() const noexcept { return universe_; }
    const std::vector<bool>& membership() const noexcept { return bits_; }
    bool contains(std::size_t i) const { return bits_.at(i); }
    std::size_t size() const noexcept { return bits_.size(); }
    std::size_t cardinality() const;
    bool empty() const { return cardinality() == 0; }
    std::vector<std::string> labels() const;

    ConcreteSet complement() const;
    friend ConcreteSet operator|(const ConcreteSet& a, const ConcreteSet& b);
    friend ConcreteSet operator&(const ConcreteSet& a, const ConcreteSet& b);
    friend ConcreteSet operator-(const ConcreteSet& a, const ConcreteSet& b);
    friend ConcreteSet operator^(const ConcreteSet& a, const ConcreteSet& b);

    // Subset test; throws UniverseMismatchError across universes.
    bool subset_of(const ConcreteSet& other) const;

    // Equal membership over equal universes.
    friend bool operator==(const ConcreteSet& a, const ConcreteSet& b);

private:
    UniverseRef universe_;
    std::vector<bool> bits_;
};

bool same_universe(const UniverseRef& a, const UniverseRef& b);

// `{p1, p3}`
std::string to_string(const ConcreteSet& s);

// Set of r-tuples of point indices; the value of an arity-r expression.
struct TupleSet {
    UniverseRef universe;
    int arity = 0;
    std::set<std::vector<std::size_t>> members;

    friend bool operator==(const TupleSet& a, const TupleSet& b);
};

// `{(p1, p2), (p2, p2)}`
std::string to_string(const TupleSet& s);

using SetValue = std::variant<ConcreteSet, TupleSet>;
std::string to_string(const SetValue& v);
bool operator==(const SetValue& a, const SetValue& b);

using Environment = std::map<std::string, ConcreteSet>;

inline constexpr std::size_t kMaxTuples = 65536;

// Ground evaluation. Arity-1 expressions yield a ConcreteSet, others a
// materialized TupleSet (at most kMaxTuples candidate tuples).
// Throws UnboundAtomError, UniverseMismatchError, LimitError.
SetValue eval_expr(const ExprPtr& e, const Environment& env, const UniverseRef& u);

// Membership of one tuple of point indices (length arity(e)).
bool contains_tuple(const ExprPtr& e, const Environment& env, std::span<const std::size_t> tuple);

// |a ^ b|
std::size_t metric(const ConcreteSet& a, const ConcreteSet& b);

inline constexpr std::size_t kMaxPowersetPoints = 16;

// All subsets of u; subset k holds point i iff bit i of k is set.
std::vector<ConcreteSet> powerset(const UniverseRef& u);

} // namespace setcalc
