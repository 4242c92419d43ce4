#include "ra/symbolic.hpp"

#include "ra/errors.hpp"

#include <algorithm>

namespace ra {

Guard word_guard(const SymbolicWord& w)
{
    std::vector<Guard> parts;
    parts.reserve(w.size());
    for (const SymbolicStep& s : w)
        parts.push_back(s.guard);
    return Guard::conj(std::move(parts));
}

std::strong_ordering compare_words(const SymbolicWord& a, const SymbolicWord& b)
{
    if (auto c = a.size() <=> b.size(); c != 0)
        return c;
    for (size_t i = 0; i < a.size(); ++i) {
        if (auto c = a[i].symbol <=> b[i].symbol; c != 0)
            return c;
        if (auto c = a[i].guard <=> b[i].guard; c != 0)
            return c;
    }
    return std::strong_ordering::equal;
}

bool word_less(const SymbolicWord& a, const SymbolicWord& b)
{
    return compare_words(a, b) < 0;
}

FeasibilityResult is_feasible(const SymbolicWord& w, const Theory& th)
{
    for (size_t i = 0; i < w.size(); ++i)
        for (const Variable& v : vars(w[i].guard)) {
            if (!v.is_marker() || v.marker_index() > static_cast<int>(i) + 1) {
                return {FeasibilityResult::Infeasible,
                        "guard " + std::to_string(i + 1) + " mentions " + v.str() +
                            " outside v1..v" + std::to_string(i + 1)};
            }
        }
    SatResult r = is_satisfiable(word_guard(w), th);
    if (r.sat())
        return {FeasibilityResult::Feasible, {}};
    if (r.unsat())
        return {FeasibilityResult::Infeasible, "guard(w) is unsatisfiable"};
    return {FeasibilityResult::Unknown, r.note};
}

SymbolicRun empty_symbolic_run(const RegisterAutomaton& a)
{
    SymbolicRun run;
    run.locations.push_back(a.initial());
    run.zetas.push_back({});
    return run;
}

SymbolicWord strace(const SymbolicRun& run)
{
    SymbolicWord w;
    w.reserve(run.steps.size());
    for (const SymbolicRun::Step& s : run.steps)
        w.push_back(SymbolicStep{s.symbol, s.instantiated});
    return w;
}

namespace {

void check_renaming_invariants(const Renaming& rho, int bound, const char* what)
{
    std::set<Variable> seen;
    for (const auto& [from, to] : rho) {
        if (!to.is_marker() || to.marker_index() > bound)
            throw std::logic_error(std::string(what) +
                                   " maps outside the markers seen so far");
        if (!seen.insert(to).second)
            throw std::logic_error(std::string(what) + " is not injective");
    }
}

} // namespace

SymbolicRun extend(const RegisterAutomaton& a, const SymbolicRun& run, size_t transition)
{
    const Transition& t = a.transitions()[transition];
    if (t.source != run.final_location())
        throw AutomatonError("transition does not start at the run's final location");

    int next_index = static_cast<int>(run.length()) + 1;
    Renaming iota = run.final_zeta();
    iota[Variable::param()] = Variable::marker(next_index);

    for (const Variable& v : vars(t.guard))
        if (!iota.count(v))
            throw UndefinedVariableError("guard of " + t.source + " --" + t.symbol +
                                         "--> " + t.target + " reads unset register " +
                                         v.str());

    Guard instantiated = rename_guard(t.guard, iota);

    Renaming zeta;
    for (const auto& [reg, src] : t.assign.updates) {
        auto found = iota.find(src);
        if (found != iota.end())
            zeta[reg] = found->second;
    }
    check_renaming_invariants(iota, next_index, "iota");
    check_renaming_invariants(zeta, next_index, "zeta");

    SymbolicRun out = run;
    out.locations.push_back(t.target);
    out.zetas.push_back(std::move(zeta));
    out.steps.push_back(SymbolicRun::Step{transition, t.symbol, std::move(iota),
                                          std::move(instantiated)});
    return out;
}

SymbolicMatch symbolic_run(const RegisterAutomaton& a, const SymbolicWord& w,
                           const Theory& th)
{
    SymbolicMatch match;
    match.run = empty_symbolic_run(a);
    std::vector<Guard> accumulated;
    for (size_t i = 0; i < w.size(); ++i) {
        std::optional<SymbolicRun> next;
        for (size_t idx : a.transitions_from(match.run.final_location(), w[i].symbol)) {
            SymbolicRun candidate;
            try {
                candidate = extend(a, match.run, idx);
            } catch (const UndefinedVariableError&) {
                continue;
            }
            if (alpha_equal(candidate.steps.back().instantiated, w[i].guard)) {
                next = std::move(candidate);
                break;
            }
        }
        if (!next) {
            match.status = SymbolicMatch::NoTransition;
            match.failed_index = i + 1;
            return match;
        }
        accumulated.push_back(w[i].guard);
        SatResult sat = is_satisfiable(Guard::conj(accumulated), th);
        if (sat.unsat()) {
            match.status = SymbolicMatch::Infeasible;
            match.failed_index = i + 1;
            return match;
        }
        if (sat.unknown()) {
            match.status = SymbolicMatch::UndecidedSat;
            match.failed_index = i + 1;
            return match;
        }
        match.run = std::move(*next);
    }
    match.status = SymbolicMatch::Accepted;
    return match;
}

namespace {

struct Exploration {
    std::vector<EnumeratedRun> runs; // breadth-first, root at index 0
    size_t undefined_skips = 0;
    bool saw_unknown = false;
    // First undefined-guard frontier event, preferring determined prefixes.
    std::optional<std::pair<size_t, size_t>> undefined_witness; // (node, transition)
};

/// Breadth-first expansion of symbolic runs up to `depth`, pruning branches
/// with unsatisfiable accumulated guards. A branch whose guard the solver
/// cannot decide is carried forward but flagged; a satisfiable extension
/// clears the flag on its ancestors, keeping the determined set prefix
/// closed.
Exploration explore(const RegisterAutomaton& a, int depth, const Theory& th)
{
    Exploration ex;
    ex.runs.push_back(EnumeratedRun{empty_symbolic_run(a), false});
    std::vector<size_t> parent{0};
    for (size_t node = 0; node < ex.runs.size(); ++node) {
        if (ex.runs[node].run.length() >= static_cast<size_t>(depth))
            continue;
        Guard prefix_guard = word_guard(strace(ex.runs[node].run));
        for (size_t idx : a.transitions_from(ex.runs[node].run.final_location())) {
            SymbolicRun next;
            try {
                next = extend(a, ex.runs[node].run, idx);
            } catch (const UndefinedVariableError&) {
                ++ex.undefined_skips;
                bool prefix_ok = !ex.runs[node].undetermined;
                if (!ex.undefined_witness ||
                    (prefix_ok && ex.runs[ex.undefined_witness->first].undetermined))
                    ex.undefined_witness = {node, idx};
                continue;
            }
            SatResult sat = is_satisfiable(
                Guard::conj(prefix_guard, next.steps.back().instantiated), th);
            if (sat.unsat())
                continue;
            ex.saw_unknown = ex.saw_unknown || sat.unknown();
            if (sat.sat())
                for (size_t up = node; ex.runs[up].undetermined; up = parent[up])
                    ex.runs[up].undetermined = false;
            ex.runs.push_back(EnumeratedRun{std::move(next), sat.unknown()});
            parent.push_back(node);
        }
    }
    return ex;
}

} // namespace

std::vector<EnumeratedRun> enumerate_symbolic_runs(const RegisterAutomaton& a,
                                                   int depth, const Theory& th)
{
    return explore(a, depth, th).runs;
}

EnumerationResult enumerate_symbolic(const RegisterAutomaton& a, int depth,
                                     const Theory& th)
{
    Exploration ex = explore(a, depth, th);
    EnumerationResult result;
    result.undefined_skips = ex.undefined_skips;
    for (const EnumeratedRun& r : ex.runs)
        (r.undetermined ? result.undetermined : result.words).push_back(strace(r.run));
    std::sort(result.words.begin(), result.words.end(), word_less);
    std::sort(result.undetermined.begin(), result.undetermined.end(), word_less);
    return result;
}

Run concretize(const RegisterAutomaton& a, const SymbolicRun& delta, const Valuation& xi)
{
    (void)a;
    for (size_t i = 1; i <= delta.length(); ++i)
        if (!xi.count(Variable::marker(static_cast<int>(i))))
            throw WitnessRejectedError("valuation misses marker v" + std::to_string(i));
    Guard total = word_guard(strace(delta));
    if (!eval_guard(total, xi))
        throw WitnessRejectedError("valuation does not satisfy the run's guard");

    Run gamma;
    gamma.start = Configuration{delta.locations[0], {}};
    for (size_t i = 0; i < delta.length(); ++i) {
        const SymbolicRun::Step& s = delta.steps[i];
        Configuration after;
        after.location = delta.locations[i + 1];
        for (const auto& [reg, marker] : delta.zetas[i + 1])
            after.registers[reg] = xi.at(marker);
        Rational value = xi.at(Variable::marker(static_cast<int>(i) + 1));
        gamma.steps.push_back(RunStep{DataSymbol{s.symbol, value}, s.transition,
                                      std::move(after)});
    }
    return gamma;
}

std::pair<SymbolicRun, Valuation> abstract_run(const RegisterAutomaton& a, const Run& gamma)
{
    SymbolicRun delta = empty_symbolic_run(a);
    Valuation xi;
    for (size_t i = 0; i < gamma.steps.size(); ++i) {
        delta = extend(a, delta, gamma.steps[i].transition);
        xi[Variable::marker(static_cast<int>(i) + 1)] = gamma.steps[i].input.value;
    }
    return {std::move(delta), std::move(xi)};
}

BoundedWellFormedness check_well_formed_bounded(const RegisterAutomaton& a, int depth,
                                                const Theory& th)
{
    Exploration ex = explore(a, depth, th);
    BoundedWellFormedness out;
    if (ex.undefined_witness) {
        auto [node, idx] = *ex.undefined_witness;
        out.witness_run = ex.runs[node].run;
        out.offending = idx;
        out.witness_prefix_undetermined = ex.runs[node].undetermined;
        out.verdict = out.witness_prefix_undetermined
                          ? BoundedWellFormedness::Undecided
                          : BoundedWellFormedness::Counterexample;
        return out;
    }
    out.verdict = BoundedWellFormedness::Ok;
    return out;
}

} // namespace ra
