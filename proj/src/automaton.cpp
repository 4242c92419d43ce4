#include "ra/automaton.hpp"

#include "ra/errors.hpp"

#include <algorithm>

namespace ra {

bool Assignment::injective() const
{
    std::set<Variable> seen;
    for (const auto& [reg, src] : updates)
        if (!seen.insert(src).second)
            return false;
    return true;
}

RegisterAutomaton::RegisterAutomaton(std::vector<Symbol> alphabet,
                                     std::vector<Location> locations,
                                     Location initial,
                                     std::vector<Variable> registers,
                                     std::vector<Transition> transitions)
    : alphabet_(std::move(alphabet)),
      locations_(std::move(locations)),
      initial_(std::move(initial)),
      registers_(std::move(registers)),
      transitions_(std::move(transitions))
{
    std::sort(alphabet_.begin(), alphabet_.end());
    alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
    std::sort(locations_.begin(), locations_.end());
    locations_.erase(std::unique(locations_.begin(), locations_.end()), locations_.end());
    std::sort(registers_.begin(), registers_.end());
    registers_.erase(std::unique(registers_.begin(), registers_.end()), registers_.end());

    auto has_location = [this](const Location& q) {
        return std::binary_search(locations_.begin(), locations_.end(), q);
    };
    auto has_symbol = [this](const Symbol& s) {
        return std::binary_search(alphabet_.begin(), alphabet_.end(), s);
    };
    auto has_register = [this](const Variable& v) {
        return std::binary_search(registers_.begin(), registers_.end(), v);
    };

    if (!has_location(initial_))
        throw AutomatonError("initial location " + initial_ + " is not a location");
    for (const Variable& v : registers_) {
        if (!v.is_register())
            throw AutomatonError("register set contains non-register variable " + v.str());
        // Registers may not collide with the marker/parameter namespaces.
        const std::string& name = v.reg_name();
        if (name == "p")
            throw AutomatonError("register may not be named p");
        if (name.size() > 1 && name[0] == 'v' &&
            std::all_of(name.begin() + 1, name.end(),
                        [](unsigned char c) { return std::isdigit(c); }))
            throw AutomatonError("register name " + name + " collides with markers");
    }
    for (const Transition& t : transitions_) {
        if (!has_location(t.source) || !has_location(t.target))
            throw AutomatonError("transition uses undeclared location");
        if (!has_symbol(t.symbol))
            throw AutomatonError("transition uses undeclared symbol " + t.symbol);
        for (const Variable& v : vars(t.guard))
            if (!v.is_param() && !has_register(v))
                throw AutomatonError("guard mentions " + v.str() +
                                     " outside V ∪ {p}");
        for (const auto& [reg, src] : t.assign.updates) {
            if (!has_register(reg))
                throw AutomatonError("assignment writes undeclared register " + reg.str());
            if (!src.is_param() && !has_register(src))
                throw AutomatonError("assignment reads " + src.str() +
                                     " outside V ∪ {p}");
        }
        if (!t.assign.injective())
            throw AutomatonError("assignment on " + t.source + " --" + t.symbol +
                                 "--> " + t.target + " is not injective");
    }
}

std::vector<size_t> RegisterAutomaton::transitions_from(const Location& from,
                                                        const Symbol& symbol) const
{
    std::vector<size_t> out;
    for (size_t i = 0; i < transitions_.size(); ++i)
        if (transitions_[i].source == from && transitions_[i].symbol == symbol)
            out.push_back(i);
    return out;
}

std::vector<size_t> RegisterAutomaton::transitions_from(const Location& from) const
{
    std::vector<size_t> out;
    for (size_t i = 0; i < transitions_.size(); ++i)
        if (transitions_[i].source == from)
            out.push_back(i);
    return out;
}

std::vector<Configuration> Run::configurations() const
{
    std::vector<Configuration> out{start};
    for (const RunStep& s : steps)
        out.push_back(s.after);
    return out;
}

DataWord Run::word() const
{
    DataWord out;
    for (const RunStep& s : steps)
        out.push_back(s.input);
    return out;
}

ValidationReport validate(const RegisterAutomaton& a, const Theory& th)
{
    ValidationReport report;
    const auto& ts = a.transitions();
    for (size_t i = 0; i < ts.size(); ++i)
        if (!ts[i].assign.injective())
            report.non_injective.push_back(i);
    for (size_t i = 0; i < ts.size(); ++i)
        for (size_t j = i + 1; j < ts.size(); ++j) {
            if (ts[i].source != ts[j].source || ts[i].symbol != ts[j].symbol)
                continue;
            SatResult r = is_satisfiable(Guard::conj(ts[i].guard, ts[j].guard), th);
            if (r.sat())
                report.determinism.push_back({i, j, std::move(r.witness)});
            else if (r.unknown())
                report.unknown_pairs.emplace_back(i, j);
        }
    return report;
}

Configuration initial_configuration(const RegisterAutomaton& a)
{
    return Configuration{a.initial(), {}};
}

std::optional<std::pair<Configuration, size_t>>
step(const RegisterAutomaton& a, const Configuration& c, const DataSymbol& s)
{
    Valuation iota = c.registers;
    iota[Variable::param()] = s.value;

    std::optional<size_t> enabled;
    for (size_t idx : a.transitions_from(c.location, s.symbol)) {
        const Transition& t = a.transitions()[idx];
        bool holds = eval_guard(t.guard, iota); // throws UndefinedVariableError
        if (!holds)
            continue;
        if (enabled)
            throw AutomatonError("two transitions enabled from " + c.location +
                                 " on " + s.symbol + ": automaton is not deterministic");
        enabled = idx;
    }
    if (!enabled)
        return std::nullopt;

    const Transition& t = a.transitions()[*enabled];
    Configuration next;
    next.location = t.target;
    for (const auto& [reg, src] : t.assign.updates) {
        auto found = iota.find(src);
        if (found != iota.end())
            next.registers[reg] = found->second;
    }
    return std::make_pair(std::move(next), *enabled);
}

RunResult run_word(const RegisterAutomaton& a, const DataWord& w)
{
    RunResult result;
    result.run.start = initial_configuration(a);
    Configuration current = result.run.start;
    for (size_t i = 0; i < w.size(); ++i) {
        auto next = step(a, current, w[i]);
        if (!next) {
            result.rejected_at = i;
            return result;
        }
        result.run.steps.push_back(RunStep{w[i], next->second, next->first});
        current = std::move(next->first);
    }
    return result;
}

SyntacticWellFormedness check_well_formed_syntactic(const RegisterAutomaton& a)
{
    SyntacticWellFormedness out;
    const std::set<Variable> all(a.registers().begin(), a.registers().end());

    // Greatest fixpoint: start from "everything defined" except at q0 and
    // shrink through the transition relation.
    std::map<Location, std::set<Variable>> defined;
    for (const Location& q : a.locations())
        defined[q] = all;
    defined[a.initial()] = {};

    // Syntactic reachability first, so unreachable locations are skipped.
    std::set<Location> reachable{a.initial()};
    for (bool changed = true; changed;) {
        changed = false;
        for (const Transition& t : a.transitions())
            if (reachable.count(t.source) && reachable.insert(t.target).second)
                changed = true;
    }
    for (const Location& q : a.locations())
        if (!reachable.count(q))
            out.unreachable.push_back(q);

    for (bool changed = true; changed;) {
        changed = false;
        for (const Transition& t : a.transitions()) {
            if (!reachable.count(t.source))
                continue;
            std::set<Variable> after;
            for (const auto& [reg, src] : t.assign.updates)
                if (src.is_param() || defined[t.source].count(src))
                    after.insert(reg);
            if (t.target == a.initial())
                continue; // the empty run already forces ∅ at q0
            std::set<Variable> merged;
            std::set_intersection(defined[t.target].begin(), defined[t.target].end(),
                                  after.begin(), after.end(),
                                  std::inserter(merged, merged.begin()));
            if (merged != defined[t.target]) {
                defined[t.target] = std::move(merged);
                changed = true;
            }
        }
    }

    out.well_formed = true;
    const auto& ts = a.transitions();
    for (size_t i = 0; i < ts.size(); ++i) {
        if (!reachable.count(ts[i].source))
            continue;
        for (const Variable& v : vars(ts[i].guard)) {
            if (v.is_param())
                continue;
            if (!defined[ts[i].source].count(v)) {
                out.well_formed = false;
                out.offending.push_back(i);
                break;
            }
        }
    }
    for (const Location& q : a.locations())
        if (reachable.count(q))
            out.defined[q] = defined[q];
    return out;
}

} // namespace ra
