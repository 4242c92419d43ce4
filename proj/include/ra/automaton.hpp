#ifndef RA_AUTOMATON_HPP
#define RA_AUTOMATON_HPP

#include "ra/guard.hpp"
#include "ra/theory.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ra {

using Location = std::string;
using Symbol = std::string;

/// Injective partial map register := register | p.
struct Assignment {
    std::map<Variable, Variable> updates;

    bool injective() const;
    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Transition {
    Location source;
    Symbol symbol;
    Guard guard;
    Assignment assign;
    Location target;

    friend bool operator==(const Transition&, const Transition&) = default;
};

/// Deterministic register automaton. Immutable after construction;
/// construction validates structure (locations, symbols, register scoping,
/// assignment injectivity) and throws AutomatonError on violations.
/// Semantic determinism is checked separately by validate().
class RegisterAutomaton {
public:
    RegisterAutomaton(std::vector<Symbol> alphabet,
                      std::vector<Location> locations,
                      Location initial,
                      std::vector<Variable> registers,
                      std::vector<Transition> transitions);

    const std::vector<Symbol>& alphabet() const { return alphabet_; }
    const std::vector<Location>& locations() const { return locations_; }
    const Location& initial() const { return initial_; }
    const std::vector<Variable>& registers() const { return registers_; }
    const std::vector<Transition>& transitions() const { return transitions_; }

    /// Indices of transitions leaving `from` labelled `symbol`.
    std::vector<size_t> transitions_from(const Location& from, const Symbol& symbol) const;
    std::vector<size_t> transitions_from(const Location& from) const;

private:
    std::vector<Symbol> alphabet_;
    std::vector<Location> locations_;
    Location initial_;
    std::vector<Variable> registers_;
    std::vector<Transition> transitions_;
};

struct DataSymbol {
    Symbol symbol;
    Rational value;

    friend bool operator==(const DataSymbol&, const DataSymbol&) = default;
};

using DataWord = std::vector<DataSymbol>;

struct Configuration {
    Location location;
    Valuation registers; // domain ⊆ V

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct RunStep {
    DataSymbol input;
    size_t transition; // index into the automaton's transition list
    Configuration after;
};

/// Alternating configurations and data symbols, starting at (q0, ∅).
struct Run {
    Configuration start;
    std::vector<RunStep> steps;

    size_t length() const { return steps.size(); }
    const Configuration& final() const
    {
        return steps.empty() ? start : steps.back().after;
    }
    std::vector<Configuration> configurations() const;
    DataWord word() const;
};

struct RunResult {
    Run run;                              // the accepted prefix
    std::optional<size_t> rejected_at;    // index of the first stuck step

    bool accepted() const { return !rejected_at.has_value(); }
};

/// Findings of the static semantic check: non-disjoint guard pairs (with a
/// witness valuation over registers and p), non-injective assignments, and
/// guard pairs the solver could not decide.
struct ValidationReport {
    struct GuardClash {
        size_t first, second;
        Valuation witness;
    };
    std::vector<GuardClash> determinism;
    std::vector<size_t> non_injective;
    std::vector<std::pair<size_t, size_t>> unknown_pairs;

    bool ok() const { return determinism.empty() && non_injective.empty(); }
};

/// Pairwise guard disjointness per (location, symbol), decided theory-side.
ValidationReport validate(const RegisterAutomaton& a, const Theory& th);

/// One execution step from configuration c on data symbol s: evaluates the
/// guards of the matching transitions under ι = ξ ∪ {p ↦ d} and fires the
/// unique enabled one; successor valuation is ι ∘ ϱ. Returns nullopt when no
/// guard holds. Throws UndefinedVariableError when a guard reads an
/// unassigned register, which signals non-well-formedness at runtime.
std::optional<std::pair<Configuration, size_t>>
step(const RegisterAutomaton& a, const Configuration& c, const DataSymbol& s);

Configuration initial_configuration(const RegisterAutomaton& a);

/// Runs the whole word; on rejection reports the index of the first stuck
/// step together with the accepted prefix run.
RunResult run_word(const RegisterAutomaton& a, const DataWord& w);

/// Syntactic well-formedness: forward dataflow of definitely-defined register
/// sets. `well_formed == true` is sound (the automaton is well-formed);
/// false is inconclusive.
struct SyntacticWellFormedness {
    bool well_formed = false;
    std::map<Location, std::set<Variable>> defined;
    std::vector<Location> unreachable;      // skipped by the dataflow
    std::vector<size_t> offending;          // transitions reading undefined registers

    bool ok() const { return well_formed; }
};

SyntacticWellFormedness check_well_formed_syntactic(const RegisterAutomaton& a);

} // namespace ra

#endif
