#include "setcalc/concrete.hpp"

#include <algorithm>

namespace setcalc {

namespace {

void require_same(const ConcreteSet& a, const ConcreteSet& b) {
    if (!same_universe(a.universe(), b.universe())) throw UniverseMismatchError();
}

template <typename F>
ConcreteSet combine(const ConcreteSet& a, const ConcreteSet& b, F f) {
    require_same(a, b);
    std::vector<bool> bits(a.size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = f(a.contains(i), b.contains(i));
    return ConcreteSet(a.universe(), std::move(bits));
}

void check_bindings(const Expr& e, const Environment& env, const UniverseRef& u) {
    if (e.op() == Op::atom) {
        const auto it = env.find(e.name());
        if (it == env.end()) throw UnboundAtomError(e.name());
        if (!same_universe(it->second.universe(), u)) throw UniverseMismatchError();
        return;
    }
    if (e.left()) check_bindings(*e.left(), env, u);
    if (e.right()) check_bindings(*e.right(), env, u);
}

bool member(const Expr& e, const Environment& env, std::span<const std::size_t> t) {
    switch (e.op()) {
    case Op::atom: return env.at(e.name()).contains(t[0]);
    case Op::empty: return false;
    case Op::universal: return true;
    case Op::complement: return !member(*e.left(), env, t);
    case Op::unite: return member(*e.left(), env, t) || member(*e.right(), env, t);
    case Op::intersect: return member(*e.left(), env, t) && member(*e.right(), env, t);
    case Op::difference: return member(*e.left(), env, t) && !member(*e.right(), env, t);
    case Op::symdiff: return member(*e.left(), env, t) != member(*e.right(), env, t);
    case Op::product: {
        const auto split = static_cast<std::size_t>(e.left()->arity());
        return member(*e.left(), env, t.first(split)) && member(*e.right(), env, t.subspan(split));
    }
    }
    return false;
}

} // namespace

Universe::Universe(std::vector<std::string> points) : points_(std::move(points)) {
    std::vector<std::string> sorted = points_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error("universe labels must be distinct");
    }
}

Universe Universe::numbered(std::size_t n) {
    std::vector<std::string> pts;
    for (std::size_t i = 1; i <= n; ++i) pts.push_back("p" + std::to_string(i));
    return Universe(std::move(pts));
}

std::size_t Universe::index_of(const std::string& label) const {
    const auto it = std::find(points_.begin(), points_.end(), label);
    if (it == points_.end()) throw Error("no point labelled '" + label + "'");
    return static_cast<std::size_t>(it - points_.begin());
}

UniverseRef make_universe(std::size_t n) { return std::make_shared<const Universe>(Universe::numbered(n)); }

bool same_universe(const UniverseRef& a, const UniverseRef& b) {
    if (a == b) return true;
    return a && b && *a == *b;
}

ConcreteSet::ConcreteSet(UniverseRef u) : universe_(std::move(u)), bits_(universe_->size(), false) {}

ConcreteSet::ConcreteSet(UniverseRef u, std::vector<bool> membership)
    : universe_(std::move(u)), bits_(std::move(membership)) {
    if (bits_.size() != universe_->size()) throw UniverseMismatchError();
}

ConcreteSet ConcreteSet::from_labels(UniverseRef u, const std::vector<std::string>& labels) {
    ConcreteSet s(std::move(u));
    for (const auto& l : labels) s.bits_[s.universe_->index_of(l)] = true;
    return s;
}

ConcreteSet ConcreteSet::full(UniverseRef u) {
    const auto n = u->size();
    return ConcreteSet(std::move(u), std::vector<bool>(n, true));
}

std::size_t ConcreteSet::cardinality() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<std::string> ConcreteSet::labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) out.push_back(universe_->label(i));
    }
    return out;
}

ConcreteSet ConcreteSet::complement() const {
    std::vector<bool> bits = bits_;
    bits.flip();
    return ConcreteSet(universe_, std::move(bits));
}

ConcreteSet operator|(const ConcreteSet& a, const ConcreteSet& b) {
    return combine(a, b, [](bool x, bool y) { return x || y; });
}

ConcreteSet operator&(const ConcreteSet& a, const ConcreteSet& b) {
    return combine(a, b, [](bool x, bool y) { return x && y; });
}

ConcreteSet operator-(const ConcreteSet& a, const ConcreteSet& b) {
    return combine(a, b, [](bool x, bool y) { return x && !y; });
}

ConcreteSet operator^(const ConcreteSet& a, const ConcreteSet& b) {
    return combine(a, b, [](bool x, bool y) { return x != y; });
}

bool ConcreteSet::subset_of(const ConcreteSet& other) const {
    require_same(*this, other);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] && !other.bits_[i]) return false;
    }
    return true;
}

bool operator==(const ConcreteSet& a, const ConcreteSet& b) {
    return same_universe(a.universe_, b.universe_) && a.bits_ == b.bits_;
}

std::string to_string(const ConcreteSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& l : s.labels()) {
        if (!first) out += ", ";
        first = false;
        out += l;
    }
    return out + "}";
}

bool operator==(const TupleSet& a, const TupleSet& b) {
    return same_universe(a.universe, b.universe) && a.arity == b.arity && a.members == b.members;
}

std::string to_string(const TupleSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& t : s.members) {
        if (!first) out += ", ";
        first = false;
        out += '(';
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) out += ", ";
            out += s.universe->label(t[i]);
        }
        out += ')';
    }
    return out + "}";
}

std::string to_string(const SetValue& v) {
    return std::visit([](const auto& s) { return to_string(s); }, v);
}

bool operator==(const SetValue& a, const SetValue& b) {
    if (a.index() != b.index()) return false;
    if (const auto* s = std::get_if<ConcreteSet>(&a)) return *s == std::get<ConcreteSet>(b);
    return std::get<TupleSet>(a) == std::get<TupleSet>(b);
}

bool contains_tuple(const ExprPtr& e, const Environment& env, std::span<const std::size_t> tuple) {
    if (tuple.size() != static_cast<std::size_t>(e->arity())) throw ArityError("tuple length differs from arity");
    return member(*e, env, tuple);
}

SetValue eval_expr(const ExprPtr& e, const Environment& env, const UniverseRef& u) {
    check_bindings(*e, env, u);
    const std::size_t n = u->size();
    const auto r = static_cast<std::size_t>(e->arity());
    if (r == 1) {
        std::vector<bool> bits(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t t[1] = {i};
            bits[i] = member(*e, env, t);
        }
        return ConcreteSet(u, std::move(bits));
    }
    std::size_t count = 1;
    for (std::size_t k = 0; k < r; ++k) {
        if (n != 0 && count > kMaxTuples / n) throw LimitError("more than 65536 tuples");
        count *= n;
    }
    TupleSet out{u, static_cast<int>(r), {}};
    std::vector<std::size_t> t(r, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rest = idx;
        for (std::size_t k = r; k-- > 0;) {
            t[k] = rest % n;
            rest /= n;
        }
        if (member(*e, env, t)) out.members.insert(t);
    }
    return out;
}

std::size_t metric(const ConcreteSet& a, const ConcreteSet& b) { return (a ^ b).cardinality(); }

std::vector<ConcreteSet> powerset(const UniverseRef& u) {
    const std::size_t n = u->size();
    if (n > kMaxPowersetPoints) throw LimitError("powerset of more than 16 points");
    std::vector<ConcreteSet> out;
    out.reserve(std::size_t{1} << n);
    for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
        std::vector<bool> bits(n);
        for (std::size_t i = 0; i < n; ++i) bits[i] = k >> i & 1;
        out.emplace_back(u, std::move(bits));
    }
    return out;
}

} // namespace setcalc
