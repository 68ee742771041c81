#include "setcalc/decider.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace setcalc {

namespace {

// Bit-sliced evaluation: each 64-bit word carries one membership bit for 64
// consecutive patterns, so one run of a program decides a whole block.
enum class Code : std::uint8_t { load, zero, one, negate, conj, disj, minus, exclusive };

struct Instr {
    Code code;
    std::uint32_t index = 0;
};

using Program = std::vector<Instr>;
using VarIndex = std::map<Var, std::uint32_t>;

constexpr std::uint64_t kLowMasks[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

constexpr std::size_t kMaxInstances = 4096;
constexpr std::size_t kHardVarLimit = 62;

void collect(const Expr& e, std::span<const int> slots, std::set<Var>& out) {
    switch (e.op()) {
    case Op::atom: out.insert({e.name(), slots[0]}); return;
    case Op::empty:
    case Op::universal: return;
    case Op::product: {
        const auto split = static_cast<std::size_t>(e.left()->arity());
        collect(*e.left(), slots.first(split), out);
        collect(*e.right(), slots.subspan(split), out);
        return;
    }
    default:
        collect(*e.left(), slots, out);
        if (e.right()) collect(*e.right(), slots, out);
        return;
    }
}

void compile(const Expr& e, std::span<const int> slots, const VarIndex& index, Program& out) {
    switch (e.op()) {
    case Op::atom: out.push_back({Code::load, index.at(Var{e.name(), slots[0]})}); return;
    case Op::empty: out.push_back({Code::zero}); return;
    case Op::universal: out.push_back({Code::one}); return;
    case Op::complement:
        compile(*e.left(), slots, index, out);
        out.push_back({Code::negate});
        return;
    case Op::product: {
        const auto split = static_cast<std::size_t>(e.left()->arity());
        compile(*e.left(), slots.first(split), index, out);
        compile(*e.right(), slots.subspan(split), index, out);
        out.push_back({Code::conj});
        return;
    }
    default: break;
    }
    compile(*e.left(), slots, index, out);
    compile(*e.right(), slots, index, out);
    switch (e.op()) {
    case Op::unite: out.push_back({Code::disj}); return;
    case Op::intersect: out.push_back({Code::conj}); return;
    case Op::difference: out.push_back({Code::minus}); return;
    case Op::symdiff: out.push_back({Code::exclusive}); return;
    default: throw std::logic_error("unreachable operator");
    }
}

std::uint64_t run(const Program& prog, std::span<const std::uint64_t> words, std::vector<std::uint64_t>& stack) {
    stack.clear();
    for (const Instr& in : prog) {
        switch (in.code) {
        case Code::load: stack.push_back(words[in.index]); break;
        case Code::zero: stack.push_back(0); break;
        case Code::one: stack.push_back(~std::uint64_t{0}); break;
        case Code::negate: stack.back() = ~stack.back(); break;
        default: {
            const std::uint64_t b = stack.back();
            stack.pop_back();
            std::uint64_t& a = stack.back();
            switch (in.code) {
            case Code::conj: a &= b; break;
            case Code::disj: a |= b; break;
            case Code::minus: a &= ~b; break;
            default: a ^= b; break;
            }
        }
        }
    }
    return stack.back();
}

// Visits blocks of up to 64 patterns over n variables in index order;
// `visit(base, mask, words)` returns false to stop early.
template <typename Visit>
void for_each_block(std::size_t n, Visit visit) {
    std::vector<std::uint64_t> words(n);
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint64_t mask = n < 6 ? (std::uint64_t{1} << total) - 1 : ~std::uint64_t{0};
    for (std::uint64_t base = 0; base < total; base += 64) {
        for (std::size_t i = 0; i < n; ++i) {
            words[i] = i < 6 ? kLowMasks[i] : ((base >> i & 1) ? ~std::uint64_t{0} : 0);
        }
        if (!visit(base, mask, std::span<const std::uint64_t>(words))) return;
    }
}

// An equation placed at particular goal coordinates.
struct Instance {
    const Equation* eq;
    std::vector<int> slots;
};

std::vector<int> iota_slots(int r) {
    std::vector<int> s(r);
    for (int i = 0; i < r; ++i) s[i] = i + 1;
    return s;
}

std::vector<Instance> hypothesis_instances(const Identity& stmt) {
    const int r = stmt.goal.lhs->arity();
    std::vector<Instance> out;
    for (const auto& h : stmt.hypotheses) {
        const int a = h.lhs->arity();
        std::size_t count = 1;
        for (int k = 0; k < a; ++k) {
            count *= static_cast<std::size_t>(r);
            if (count > kMaxInstances) throw LimitError("too many hypothesis instances for " + to_string(h));
        }
        // Every map {1..a} -> {1..r}, as an odometer.
        std::vector<int> slots(a, 1);
        for (std::size_t c = 0; c < count; ++c) {
            out.push_back({&h, slots});
            for (int k = a - 1; k >= 0; --k) {
                if (slots[k] < r) {
                    ++slots[k];
                    break;
                }
                slots[k] = 1;
            }
        }
    }
    return out;
}

Poly indicator_at(const ExprPtr& e, std::span<const int> slots) {
    Poly p = poly_from_expr(e, static_cast<int>(kHardVarLimit));
    return remap_coords(p, slots);
}

// f + g - 2fg: 1 exactly where the two 0/1 polynomials disagree.
Poly disagreement(const Poly& f, const Poly& g) {
    const Poly fg = f * g;
    return f + g - fg - fg;
}

std::size_t guarded(std::size_t n, int guard) {
    if (n > static_cast<std::size_t>(guard) || n > kHardVarLimit) {
        throw LimitError(std::to_string(n) + " variables exceeds guard of " + std::to_string(guard));
    }
    return n;
}

Verdict decide_both_ways(const Identity& stmt, int guard) {
    const int r = stmt.goal.lhs->arity();
    const std::vector<int> goal_slots = iota_slots(r);
    const auto hyps = hypothesis_instances(stmt);

    std::set<Var> var_set;
    collect(*stmt.goal.lhs, goal_slots, var_set);
    collect(*stmt.goal.rhs, goal_slots, var_set);
    for (const auto& in : hyps) {
        collect(*in.eq->lhs, in.slots, var_set);
        collect(*in.eq->rhs, in.slots, var_set);
    }
    const std::vector<Var> vars(var_set.begin(), var_set.end());
    const std::size_t n = guarded(vars.size(), guard);

    // Route 1: normal forms.
    const Poly goal_l = indicator_at(stmt.goal.lhs, goal_slots);
    const Poly goal_r = indicator_at(stmt.goal.rhs, goal_slots);
    bool poly_valid = false;
    bool poly_vacuous = false;
    if (hyps.empty()) {
        poly_valid = goal_l == goal_r;
    } else {
        Poly admissible = Poly::constant(1);
        for (const auto& in : hyps) {
            admissible = admissible * (Poly::constant(1) - disagreement(indicator_at(in.eq->lhs, in.slots),
                                                                        indicator_at(in.eq->rhs, in.slots)));
        }
        poly_vacuous = admissible.is_zero();
        poly_valid = (admissible * disagreement(goal_l, goal_r)).is_zero();
    }

    // Route 2: exhaustive pattern enumeration on the syntax tree.
    VarIndex index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(vars[i], static_cast<std::uint32_t>(i));
    Program lhs_prog, rhs_prog;
    compile(*stmt.goal.lhs, goal_slots, index, lhs_prog);
    compile(*stmt.goal.rhs, goal_slots, index, rhs_prog);
    std::vector<std::pair<Program, Program>> hyp_progs;
    for (const auto& in : hyps) {
        auto& [l, rr] = hyp_progs.emplace_back();
        compile(*in.eq->lhs, in.slots, index, l);
        compile(*in.eq->rhs, in.slots, index, rr);
    }
    std::vector<std::uint64_t> stack;
    bool any_admissible = false;
    std::optional<std::uint64_t> refuting;
    for_each_block(n, [&](std::uint64_t base, std::uint64_t mask, std::span<const std::uint64_t> words) {
        std::uint64_t ok = mask;
        for (const auto& [l, rr] : hyp_progs) {
            ok &= ~(run(l, words, stack) ^ run(rr, words, stack));
            if (!ok) return true;
        }
        any_admissible = true;
        const std::uint64_t bad = (run(lhs_prog, words, stack) ^ run(rhs_prog, words, stack)) & ok;
        if (bad) {
            refuting = base + static_cast<std::uint64_t>(std::countr_zero(bad));
            return false;
        }
        return true;
    });

    const bool enum_valid = !refuting.has_value();
    if (enum_valid != poly_valid || (enum_valid && poly_vacuous != !any_admissible)) {
        throw std::logic_error("normal-form and enumeration verdicts disagree on: " + to_string(Statement(stmt)));
    }

    Verdict v;
    if (enum_valid) {
        v.vacuous = !any_admissible;
        return v;
    }
    v.status = Status::invalid;
    v.pattern = PatternRange(vars, guard)[*refuting];
    v.witness = witness_from_pattern(*v.pattern, stmt);
    return v;
}

// Breadth-first search over expressions by node count, keeping the first
// expression reached for each truth table. At most 4 parameters.
class Synthesizer {
public:
    Synthesizer(std::span<const Var> params, std::uint64_t target)
        : k_(params.size()), full_((std::uint64_t{1} << (std::uint64_t{1} << k_)) - 1), target_(target) {
        levels_.emplace_back();
        levels_.emplace_back();
        add(1, 0, empty_set());
        add(1, full_, universal_set());
        for (std::size_t i = 0; i < k_; ++i) add(1, kLowMasks[i] & full_, atom(params[i].set));
    }

    ExprPtr search(std::size_t max_size, std::size_t budget) {
        if (auto it = seen_.find(target_); it != seen_.end()) return it->second;
        static constexpr Op kOps[] = {Op::intersect, Op::unite, Op::difference, Op::symdiff};
        for (std::size_t size = 2; size <= max_size; ++size) {
            levels_.emplace_back();
            for (const auto& [t, e] : copy(size - 1)) {
                if (add(size, ~t & full_, complement(e))) return seen_[target_];
            }
            for (std::size_t ls = 1; ls + 1 < size; ++ls) {
                const std::size_t rs = size - 1 - ls;
                const auto left = copy(ls);
                const auto right = copy(rs);
                for (const auto& [lt, le] : left) {
                    for (const auto& [rt, re] : right) {
                        if (work_++ > budget) return nullptr;
                        for (Op op : kOps) {
                            std::uint64_t t = 0;
                            switch (op) {
                            case Op::intersect: t = lt & rt; break;
                            case Op::unite: t = lt | rt; break;
                            case Op::difference: t = lt & ~rt; break;
                            default: t = lt ^ rt; break;
                            }
                            if (add(size, t, binary(op, le, re))) return seen_[target_];
                        }
                    }
                }
            }
        }
        return nullptr;
    }

private:
    using Entry = std::pair<std::uint64_t, ExprPtr>;

    std::vector<Entry> copy(std::size_t size) const { return levels_[size]; }

    // Returns true once the target is reached.
    bool add(std::size_t size, std::uint64_t table, ExprPtr e) {
        if (seen_.emplace(table, e).second) levels_[size].push_back({table, std::move(e)});
        return table == target_;
    }

    std::size_t k_;
    std::uint64_t full_;
    std::uint64_t target_;
    std::map<std::uint64_t, ExprPtr> seen_;
    std::vector<std::vector<Entry>> levels_;
    std::size_t work_ = 0;
};

ExprPtr minterm_union(std::span<const Var> params, const std::vector<bool>& table) {
    ExprPtr out;
    for (std::size_t p = 0; p < table.size(); ++p) {
        if (!table[p]) continue;
        ExprPtr term;
        for (std::size_t i = 0; i < params.size(); ++i) {
            ExprPtr lit = atom(params[i].set);
            if (!(p >> i & 1)) lit = complement(lit);
            term = term ? intersect(term, lit) : lit;
        }
        if (!term) term = universal_set();
        out = out ? unite(out, term) : term;
    }
    return out ? out : empty_set();
}

} // namespace

PatternRange::PatternRange(std::vector<Var> vars, int guard) : vars_(std::move(vars)) {
    guarded(vars_.size(), guard);
}

Pattern PatternRange::operator[](std::uint64_t index) const {
    Pattern pt;
    for (std::size_t i = 0; i < vars_.size(); ++i) pt.emplace(vars_[i], (index >> i & 1) != 0);
    return pt;
}

PatternRange enumerate_patterns(std::vector<Var> vars, int guard) { return PatternRange(std::move(vars), guard); }

std::vector<Var> statement_variables(const Identity& stmt) {
    const std::vector<int> goal_slots = iota_slots(stmt.goal.lhs->arity());
    std::set<Var> vs;
    collect(*stmt.goal.lhs, goal_slots, vs);
    collect(*stmt.goal.rhs, goal_slots, vs);
    for (const auto& in : hypothesis_instances(stmt)) {
        collect(*in.eq->lhs, in.slots, vs);
        collect(*in.eq->rhs, in.slots, vs);
    }
    return {vs.begin(), vs.end()};
}

Verdict check_identity(const Identity& stmt, int guard) {
    if (!stmt.hypotheses.empty()) throw StatementError("check_identity takes no hypotheses");
    return decide_both_ways(stmt, guard);
}

Verdict check_conditional(const Identity& stmt, int guard) { return decide_both_ways(stmt, guard); }

Verdict decide(const Identity& stmt, int guard) {
    return stmt.hypotheses.empty() ? check_identity(stmt, guard) : check_conditional(stmt, guard);
}

Witness witness_from_pattern(const Pattern& pt, const Identity& stmt) {
    const auto r = static_cast<std::size_t>(stmt.goal.lhs->arity());
    const UniverseRef u = make_universe(r);
    Environment env;
    for (const auto& name : statement_atoms(stmt)) {
        std::vector<bool> bits(r);
        for (std::size_t i = 0; i < r; ++i) {
            const auto it = pt.find(Var{name, static_cast<int>(i + 1)});
            bits[i] = it != pt.end() && it->second;
        }
        env.emplace(name, ConcreteSet(u, std::move(bits)));
    }
    Witness w = build_witness(u, env, stmt);
    if (!w.sides_differ() || !hypotheses_hold(stmt, env, u)) throw NotACounterexampleError();
    return w;
}

bool SolutionTable::solvable() const {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return !r.empty(); });
}

bool SolutionTable::unique() const {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.size() == 1; });
}

SolutionTable solve(const SolveRequest& req, int guard) {
    std::set<std::string> names;
    for (const auto& eq : req.equations) {
        names.merge(atoms(eq.lhs));
        names.merge(atoms(eq.rhs));
    }
    SolutionTable out;
    out.unknowns = req.unknowns;
    for (const auto& name : names) {
        if (std::find(req.unknowns.begin(), req.unknowns.end(), name) == req.unknowns.end()) {
            out.parameters.push_back({name, 1});
        }
    }
    const std::size_t k = out.parameters.size();
    const std::size_t m = out.unknowns.size();
    const std::size_t n = guarded(k + m, guard);
    if (m > 31) throw LimitError("more than 31 unknowns");

    // Parameters occupy the low bits of the pattern index, unknowns the high bits.
    VarIndex index;
    for (std::size_t i = 0; i < k; ++i) index.emplace(out.parameters[i], static_cast<std::uint32_t>(i));
    for (std::size_t j = 0; j < m; ++j) index.emplace(Var{out.unknowns[j], 1}, static_cast<std::uint32_t>(k + j));
    const int slot[1] = {1};
    std::vector<std::pair<Program, Program>> progs;
    for (const auto& eq : req.equations) {
        auto& [l, r] = progs.emplace_back();
        compile(*eq.lhs, slot, index, l);
        compile(*eq.rhs, slot, index, r);
    }

    out.rows.assign(std::size_t{1} << k, {});
    const std::uint64_t param_mask = (std::uint64_t{1} << k) - 1;
    std::vector<std::uint64_t> stack;
    for_each_block(n, [&](std::uint64_t base, std::uint64_t mask, std::span<const std::uint64_t> words) {
        std::uint64_t ok = mask;
        for (const auto& [l, r] : progs) ok &= ~(run(l, words, stack) ^ run(r, words, stack));
        while (ok) {
            const std::uint64_t idx = base + static_cast<std::uint64_t>(std::countr_zero(ok));
            ok &= ok - 1;
            out.rows[idx & param_mask].push_back(static_cast<std::uint32_t>(idx >> k));
        }
        return true;
    });

    if (out.unique()) {
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<std::int64_t> values(out.rows.size());
            std::vector<bool> table(out.rows.size());
            for (std::size_t p = 0; p < out.rows.size(); ++p) {
                table[p] = (out.rows[p].front() >> j & 1) != 0;
                values[p] = table[p] ? 1 : 0;
            }
            Poly poly = poly_from_values(out.parameters, values);
            ExprPtr e = express(out.parameters, table);
            if (!(poly_from_expr(e, static_cast<int>(kHardVarLimit)) == poly)) {
                throw std::logic_error("synthesized expression does not match the solution table");
            }
            out.solution_polys.push_back(std::move(poly));
            out.solution_exprs.push_back(std::move(e));
        }
    }
    return out;
}

ExprPtr express(std::span<const Var> params, const std::vector<bool>& table) {
    if (table.size() != (std::size_t{1} << params.size())) throw IncompleteTableError("truth table size");
    if (params.size() <= 4) {
        std::uint64_t target = 0;
        for (std::size_t p = 0; p < table.size(); ++p) {
            if (table[p]) target |= std::uint64_t{1} << p;
        }
        if (ExprPtr e = Synthesizer(params, target).search(9, 2'000'000)) return e;
    }
    return minterm_union(params, table);
}

} // namespace setcalc
