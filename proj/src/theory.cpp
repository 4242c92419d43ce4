#include "ra/theory.hpp"

#include "ra/smtlib.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

namespace ra {

RelationSymbol Theory::symbol_of(const Atom& a) const
{
    std::vector<Variable> args = a.args();
    std::map<Variable, int> slot;
    for (size_t i = 0; i < args.size(); ++i)
        slot[args[i]] = static_cast<int>(i) + 1;
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, coeff] : a.poly) {
        if (!first)
            os << " + ";
        first = false;
        os << to_string(coeff);
        for (const Variable& v : mono.vars)
            os << "*_" << slot.at(v);
    }
    switch (a.cmp) {
    case Cmp::Eq:
        os << " = 0";
        break;
    case Cmp::Lt:
        os << " < 0";
        break;
    case Cmp::Le:
        os << " <= 0";
        break;
    }
    return RelationSymbol{os.str(), static_cast<int>(args.size())};
}

namespace {

// ---------------------------------------------------------------------------
// Negation elimination: rewrites ¬(t≤0) to -t<0, ¬(t<0) to -t≤0 and
// ¬(t=0) to t<0 ∨ -t<0, so downstream code sees positive atoms only.
// ---------------------------------------------------------------------------

Polynomial negated(const Polynomial& p)
{
    Polynomial out;
    for (const auto& [mono, coeff] : p)
        out[mono] = -coeff;
    return out;
}

Guard expand_negations(const Guard& g)
{
    switch (g.kind()) {
    case GuardKind::True:
    case GuardKind::Atom:
        return g;
    case GuardKind::Not: {
        const Guard& inner = g.children()[0];
        if (inner.is_true())
            return g; // canonical falsity
        const Atom& a = inner.as_atom();
        switch (a.cmp) {
        case Cmp::Le:
            return Guard::atom(Atom{Cmp::Lt, negated(a.poly)});
        case Cmp::Lt:
            return Guard::atom(Atom{Cmp::Le, negated(a.poly)});
        case Cmp::Eq:
            return Guard::disj(Guard::atom(Atom{Cmp::Lt, a.poly}),
                               Guard::atom(Atom{Cmp::Lt, negated(a.poly)}));
        }
        return g;
    }
    case GuardKind::And: {
        std::vector<Guard> ch;
        for (const Guard& c : g.children())
            ch.push_back(expand_negations(c));
        return Guard::conj(std::move(ch));
    }
    case GuardKind::Or: {
        std::vector<Guard> ch;
        for (const Guard& c : g.children())
            ch.push_back(expand_negations(c));
        return Guard::disj(std::move(ch));
    }
    }
    return g;
}

// ---------------------------------------------------------------------------
// DNF expansion with a size cap (guards here are desk-sized).
// ---------------------------------------------------------------------------

constexpr size_t kDnfCap = 4096;

using Conjunct = std::vector<Atom>;

std::optional<std::vector<Conjunct>> dnf(const Guard& g)
{
    switch (g.kind()) {
    case GuardKind::True:
        return std::vector<Conjunct>{Conjunct{}};
    case GuardKind::Atom:
        return std::vector<Conjunct>{Conjunct{g.as_atom()}};
    case GuardKind::Not:
        assert(g.is_false() && "negations were expanded");
        return std::vector<Conjunct>{};
    case GuardKind::And: {
        std::vector<Conjunct> acc{Conjunct{}};
        for (const Guard& c : g.children()) {
            auto sub = dnf(c);
            if (!sub)
                return std::nullopt;
            std::vector<Conjunct> next;
            if (acc.size() * sub->size() > kDnfCap)
                return std::nullopt;
            for (const Conjunct& left : acc)
                for (const Conjunct& right : *sub) {
                    Conjunct merged = left;
                    merged.insert(merged.end(), right.begin(), right.end());
                    next.push_back(std::move(merged));
                }
            acc = std::move(next);
        }
        return acc;
    }
    case GuardKind::Or: {
        std::vector<Conjunct> acc;
        for (const Guard& c : g.children()) {
            auto sub = dnf(c);
            if (!sub)
                return std::nullopt;
            if (acc.size() + sub->size() > kDnfCap)
                return std::nullopt;
            acc.insert(acc.end(), sub->begin(), sub->end());
        }
        return acc;
    }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin elimination over exact rationals, with witness extraction.
// Dimensions are dense ids; nonlinear monomials get ids of their own, which
// makes the infeasibility verdict sound for nonlinear conjuncts too (any real
// solution induces values for the monomials).
// ---------------------------------------------------------------------------

struct LinExpr {
    std::map<int, Rational> coeffs;
    Rational constant = 0;

    void add(int var, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = coeffs.emplace(var, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                coeffs.erase(it);
        }
    }
    void add_expr(const LinExpr& e, const Rational& scale)
    {
        for (const auto& [v, c] : e.coeffs)
            add(v, c * scale);
        constant += e.constant * scale;
    }
    Rational eval(const std::map<int, Rational>& asg) const
    {
        Rational sum = constant;
        for (const auto& [v, c] : coeffs)
            sum += c * asg.at(v);
        return sum;
    }
};

struct LinCon {
    Cmp cmp = Cmp::Le; // expr cmp 0
    LinExpr expr;
};

struct Bound {
    LinExpr expr; // the bound value as an expression over later variables
    bool strict = false;
};

struct Frame {
    int var = 0;
    std::vector<Bound> lowers, uppers;
};

/// Feasibility + a witness for a conjunction of linear constraints.
std::optional<std::map<int, Rational>> fm_decide(std::vector<LinCon> cons)
{
    // Gaussian step: use equalities as substitutions.
    std::vector<std::pair<int, LinExpr>> solved;
    for (bool changed = true; changed;) {
        changed = false;
        for (auto it = cons.begin(); it != cons.end(); ++it) {
            if (it->cmp != Cmp::Eq)
                continue;
            if (it->expr.coeffs.empty()) {
                if (it->expr.constant != 0)
                    return std::nullopt;
                cons.erase(it);
                changed = true;
                break;
            }
            auto [var, coeff] = *it->expr.coeffs.begin();
            LinExpr rhs; // var = rhs
            for (const auto& [v, c] : it->expr.coeffs)
                if (v != var)
                    rhs.add(v, -c / coeff);
            rhs.constant = -it->expr.constant / coeff;
            cons.erase(it);
            for (LinCon& other : cons) {
                auto found = other.expr.coeffs.find(var);
                if (found == other.expr.coeffs.end())
                    continue;
                Rational scale = found->second;
                other.expr.coeffs.erase(found);
                other.expr.add_expr(rhs, scale);
            }
            for (auto& [v, e] : solved)
                if (e.coeffs.count(var)) {
                    Rational scale = e.coeffs.at(var);
                    e.coeffs.erase(var);
                    e.add_expr(rhs, scale);
                }
            solved.emplace_back(var, std::move(rhs));
            changed = true;
            break;
        }
    }

    // Fourier–Motzkin on the remaining inequalities.
    std::vector<Frame> frames;
    for (;;) {
        int var = -1;
        for (const LinCon& c : cons)
            if (!c.expr.coeffs.empty()) {
                var = c.expr.coeffs.begin()->first;
                break;
            }
        if (var < 0)
            break;
        Frame frame;
        frame.var = var;
        std::vector<LinCon> rest;
        for (LinCon& c : cons) {
            auto found = c.expr.coeffs.find(var);
            if (found == c.expr.coeffs.end()) {
                rest.push_back(std::move(c));
                continue;
            }
            Rational coeff = found->second;
            c.expr.coeffs.erase(found);
            // coeff*var + rest cmp 0  =>  var cmp' -rest/coeff
            LinExpr bound;
            bound.add_expr(c.expr, Rational(-1) / coeff);
            Bound b{std::move(bound), c.cmp == Cmp::Lt};
            if (coeff > 0)
                frame.uppers.push_back(std::move(b));
            else
                frame.lowers.push_back(std::move(b));
        }
        for (const Bound& lo : frame.lowers)
            for (const Bound& up : frame.uppers) {
                LinCon combined;
                combined.cmp = (lo.strict || up.strict) ? Cmp::Lt : Cmp::Le;
                combined.expr = lo.expr;
                combined.expr.add_expr(up.expr, Rational(-1));
                rest.push_back(std::move(combined));
            }
        cons = std::move(rest);
        frames.push_back(std::move(frame));
    }

    // Ground checks.
    for (const LinCon& c : cons) {
        bool ok = c.cmp == Cmp::Lt ? c.expr.constant < 0
                                   : c.cmp == Cmp::Le ? c.expr.constant <= 0
                                                      : c.expr.constant == 0;
        if (!ok)
            return std::nullopt;
    }

    // Witness: frames in reverse, then the equality stack in reverse.
    std::map<int, Rational> asg;
    auto fill_missing = [&asg](const LinExpr& e) {
        for (const auto& [v, c] : e.coeffs)
            asg.emplace(v, 0);
    };
    for (auto frame = frames.rbegin(); frame != frames.rend(); ++frame) {
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const Bound& b : frame->lowers) {
            fill_missing(b.expr);
            Rational value = b.expr.eval(asg);
            if (!lo || value > *lo) {
                lo = value;
                lo_strict = b.strict;
            } else if (value == *lo && b.strict) {
                lo_strict = true;
            }
        }
        for (const Bound& b : frame->uppers) {
            fill_missing(b.expr);
            Rational value = b.expr.eval(asg);
            if (!hi || value < *hi) {
                hi = value;
                hi_strict = b.strict;
            } else if (value == *hi && b.strict) {
                hi_strict = true;
            }
        }
        Rational chosen;
        if (lo && hi) {
            assert(*lo < *hi || (*lo == *hi && !lo_strict && !hi_strict));
            chosen = *lo == *hi ? *lo : (*lo + *hi) / 2;
        } else if (lo) {
            chosen = lo_strict ? *lo + 1 : *lo;
        } else if (hi) {
            chosen = hi_strict ? *hi - 1 : *hi;
        } else {
            chosen = 0;
        }
        asg[frame->var] = chosen;
    }
    for (auto it = solved.rbegin(); it != solved.rend(); ++it) {
        fill_missing(it->second);
        asg[it->first] = it->second.eval(asg);
    }
    return asg;
}

// ---------------------------------------------------------------------------
// Conjunct solving: dense ids per monomial, FM verdict, then witness search.
// ---------------------------------------------------------------------------

struct ConjunctSystem {
    std::vector<LinCon> cons;
    std::map<Monomial, int> ids;
    std::vector<Monomial> monomials; // id -> monomial
    bool nonlinear = false;
};

ConjunctSystem build_system(const Conjunct& atoms)
{
    ConjunctSystem sys;
    for (const Atom& a : atoms) {
        LinCon c;
        c.cmp = a.cmp;
        for (const auto& [mono, coeff] : a.poly) {
            if (mono.degree() == 0) {
                c.expr.constant += coeff;
                continue;
            }
            if (mono.degree() > 1)
                sys.nonlinear = true;
            auto [it, inserted] =
                sys.ids.emplace(mono, static_cast<int>(sys.monomials.size()));
            if (inserted)
                sys.monomials.push_back(mono);
            c.expr.add(it->second, coeff);
        }
        sys.cons.push_back(std::move(c));
    }
    return sys;
}

bool conjunct_holds(const Conjunct& atoms, const Valuation& xi)
{
    for (const Atom& a : atoms)
        if (!eval_guard(Guard::atom(a), xi))
            return false;
    return true;
}

std::set<Variable> conjunct_vars(const Conjunct& atoms)
{
    std::set<Variable> out;
    for (const Atom& a : atoms) {
        auto v = vars(Guard::atom(a));
        out.insert(v.begin(), v.end());
    }
    return out;
}

/// Degree of x inside one atom: 0 when absent, 1 when every monomial
/// mentioning x mentions it exactly once, 2 otherwise.
int var_degree(const Atom& a, const Variable& x)
{
    int degree = 0;
    for (const auto& [mono, coeff] : a.poly) {
        int in_mono = static_cast<int>(
            std::count(mono.vars.begin(), mono.vars.end(), x));
        degree = std::max(degree, in_mono);
    }
    return degree;
}

/// Solves atom = 0 for x when all other variables are assigned and x occurs
/// linearly: A·x + B = 0 with A evaluated under xi.
std::optional<Rational> solve_for(const Atom& a, const Variable& x, const Valuation& xi)
{
    Rational coeff_x = 0, rest = 0;
    for (const auto& [mono, coeff] : a.poly) {
        Rational term = coeff;
        int x_count = 0;
        for (const Variable& v : mono.vars) {
            if (v == x) {
                ++x_count;
                continue;
            }
            auto found = xi.find(v);
            if (found == xi.end())
                return std::nullopt;
            term *= found->second;
        }
        if (x_count > 1)
            return std::nullopt;
        (x_count == 1 ? coeff_x : rest) += term;
    }
    if (coeff_x == 0)
        return std::nullopt;
    return -rest / coeff_x;
}

/// Extends xi through equality atoms: whenever exactly one variable of an
/// equality is unassigned and occurs linearly, its value is forced.
void propagate_equalities(const Conjunct& atoms, Valuation& xi)
{
    for (bool changed = true; changed;) {
        changed = false;
        for (const Atom& a : atoms) {
            if (a.cmp != Cmp::Eq)
                continue;
            std::optional<Variable> open;
            bool single = true;
            for (const Variable& v : a.args()) {
                if (xi.count(v))
                    continue;
                if (open && !(*open == v)) {
                    single = false;
                    break;
                }
                open = v;
            }
            if (!single || !open)
                continue;
            if (auto value = solve_for(a, *open, xi)) {
                xi[*open] = *value;
                changed = true;
            }
        }
    }
}

const std::vector<Rational>& heuristic_values()
{
    static const std::vector<Rational> values = [] {
        std::vector<Rational> v;
        for (int n : {0, 1, -1, 2, -2, 3, -3, 10, -10, 31, -31, 40, -40})
            v.emplace_back(n);
        v.emplace_back(Rational(1, 2));
        v.emplace_back(Rational(-1, 2));
        return v;
    }();
    return values;
}

std::optional<Valuation> nonlinear_witness_search(const Conjunct& atoms)
{
    std::set<Variable> all = conjunct_vars(atoms);

    Valuation pinned;
    propagate_equalities(atoms, pinned);

    // Candidate 1: witness of the purely linear sub-conjunct, free vars zero.
    {
        Conjunct linear_part;
        for (const Atom& a : atoms)
            if (a.is_linear())
                linear_part.push_back(a);
        ConjunctSystem sys = build_system(linear_part);
        if (auto asg = fm_decide(sys.cons)) {
            Valuation xi;
            for (const auto& [mono, id] : sys.ids)
                xi[mono.vars[0]] = asg->count(id) ? asg->at(id) : Rational(0);
            for (const Variable& v : all)
                xi.emplace(v, 0);
            if (conjunct_holds(atoms, xi))
                return xi;
        }
    }

    // Each equality can derive one of its variables once the rest are
    // chosen, which shrinks the search dimension.
    std::set<Variable> derived;
    for (const Atom& a : atoms) {
        if (a.cmp != Cmp::Eq)
            continue;
        std::vector<Variable> candidates;
        for (const Variable& v : a.args())
            if (!pinned.count(v) && !derived.count(v) && var_degree(a, v) == 1)
                candidates.push_back(v);
        if (candidates.empty())
            continue;
        // Prefer a variable with a constant coefficient so the solve step
        // never divides by zero.
        auto alone = std::find_if(candidates.begin(), candidates.end(),
                                  [&](const Variable& v) {
                                      for (const auto& [mono, coeff] : a.poly)
                                          if (mono.vars == std::vector<Variable>{v})
                                              return true;
                                      return false;
                                  });
        derived.insert(alone != candidates.end() ? *alone : candidates.front());
    }

    std::vector<Variable> free;
    for (const Variable& v : all)
        if (!pinned.count(v) && !derived.count(v))
            free.push_back(v);

    auto try_candidate = [&](Valuation xi) -> std::optional<Valuation> {
        propagate_equalities(atoms, xi);
        for (const Variable& v : all)
            xi.emplace(v, 0);
        if (conjunct_holds(atoms, xi))
            return xi;
        return std::nullopt;
    };
    const auto& values = heuristic_values();

    // Candidate 2: exhaustive grid when the free dimension is small.
    if (free.size() <= 4) {
        std::vector<size_t> idx(free.size(), 0);
        for (;;) {
            Valuation xi = pinned;
            for (size_t i = 0; i < free.size(); ++i)
                xi[free[i]] = values[idx[i]];
            if (auto found = try_candidate(std::move(xi)))
                return found;
            size_t k = 0;
            while (k < idx.size() && ++idx[k] == values.size()) {
                idx[k] = 0;
                ++k;
            }
            if (k == idx.size())
                break;
        }
        if (free.empty())
            return std::nullopt;
    }

    // Candidate 3: seeded random sampling; deterministic across runs.
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<int> num(-100, 100);
    std::uniform_int_distribution<int> den(1, 2);
    for (int attempt = 0; attempt < 20000; ++attempt) {
        Valuation xi = pinned;
        for (const Variable& v : free)
            xi[v] = Rational(num(rng), den(rng));
        if (auto found = try_candidate(std::move(xi)))
            return found;
    }
    return std::nullopt;
}

struct ConjunctResult {
    SatKind kind;
    Valuation witness;
};

ConjunctResult solve_conjunct(const Conjunct& atoms, const Theory& th)
{
    ConjunctSystem sys = build_system(atoms);
    auto asg = fm_decide(sys.cons);
    if (!asg)
        return {SatKind::Unsat, {}};
    if (!sys.nonlinear) {
        Valuation xi;
        for (const auto& [mono, id] : sys.ids)
            xi[mono.vars[0]] = asg->count(id) ? asg->at(id) : Rational(0);
        assert(conjunct_holds(atoms, xi));
        return {SatKind::Sat, std::move(xi)};
    }
    if (auto xi = nonlinear_witness_search(atoms))
        return {SatKind::Sat, std::move(*xi)};
    if (th.mode() == SolverMode::External && !th.solver_command().empty()) {
        std::vector<Guard> parts;
        for (const Atom& a : atoms)
            parts.push_back(Guard::atom(a));
        SatResult ext = smt_solve_external(Guard::conj(std::move(parts)),
                                           th.solver_command());
        if (ext.sat())
            return {SatKind::Sat, std::move(ext.witness)};
        if (ext.unsat())
            return {SatKind::Unsat, {}};
    }
    return {SatKind::Unknown, {}};
}

} // namespace

SatResult is_satisfiable(const Guard& g, const Theory& th)
{
    if (g.is_true())
        return SatResult::make_sat({});
    if (g.is_false())
        return SatResult::make_unsat();
    if (th.mode() == SolverMode::None)
        return SatResult::make_unknown("theory has no solver capability");

    Guard positive = expand_negations(g);
    auto clauses = dnf(positive);
    if (!clauses)
        return SatResult::make_unknown("guard exceeds the DNF size cap");

    std::set<Variable> gvars = vars(g);
    bool any_unknown = false;
    for (const Conjunct& conjunct : *clauses) {
        ConjunctResult r = solve_conjunct(conjunct, th);
        if (r.kind == SatKind::Sat) {
            for (const Variable& v : gvars)
                r.witness.emplace(v, 0);
            if (eval_guard(g, r.witness))
                return SatResult::make_sat(std::move(r.witness));
            any_unknown = true; // witness failed to verify; never report sat
        } else if (r.kind == SatKind::Unknown) {
            any_unknown = true;
        }
    }
    if (any_unknown)
        return SatResult::make_unknown("undecided nonlinear conjunct");
    return SatResult::make_unsat();
}

} // namespace ra
