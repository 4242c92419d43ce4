#ifndef RA_SYMBOLIC_HPP
#define RA_SYMBOLIC_HPP

#include "ra/automaton.hpp"

#include <optional>
#include <vector>

namespace ra {

/// One α G segment of a symbolic word; G ranges over markers v1..vn.
struct SymbolicStep {
    Symbol symbol;
    Guard guard;

    friend bool operator==(const SymbolicStep&, const SymbolicStep&) = default;
};

using SymbolicWord = std::vector<SymbolicStep>;

/// G1 ∧ ... ∧ Gn.
Guard word_guard(const SymbolicWord& w);

/// Total order: length first, then (symbol, guard) per step. Used everywhere
/// sorted word sets or "lexicographically least" representatives are needed.
std::strong_ordering compare_words(const SymbolicWord& a, const SymbolicWord& b);
bool word_less(const SymbolicWord& a, const SymbolicWord& b);

struct FeasibilityResult {
    enum Kind { Feasible, Infeasible, Unknown } kind = Unknown;
    std::string reason;
};

/// Def: every guard G_i mentions only v1..v_i and the whole conjunction is
/// satisfiable.
FeasibilityResult is_feasible(const SymbolicWord& w, const Theory& th);

/// A run whose valuations map registers to the markers of the inputs that
/// filled them. ζ0 is empty; ι_i = ζ_{i-1} ∪ {p ↦ v_i}; ζ_i = ι_i ∘ ϱ_i.
/// All ζ_i and ι_i are injective and range inside {v1..v_i}; extension
/// enforces both.
struct SymbolicRun {
    struct Step {
        size_t transition; // index into the automaton's transitions
        Symbol symbol;
        Renaming iota;
        Guard instantiated; // G_i = g_i[ι_i]
    };

    std::vector<Location> locations{}; // length n+1
    std::vector<Renaming> zetas{};     // length n+1
    std::vector<Step> steps;           // length n

    size_t length() const { return steps.size(); }
    const Location& final_location() const { return locations.back(); }
    const Renaming& final_zeta() const { return zetas.back(); }
};

SymbolicRun empty_symbolic_run(const RegisterAutomaton& a);

/// The symbolic trace α1 G1 ... αn Gn of a run.
SymbolicWord strace(const SymbolicRun& run);

/// Extends a run by one transition. Throws UndefinedVariableError when the
/// guard reads a register outside domain(ι); does not check satisfiability.
SymbolicRun extend(const RegisterAutomaton& a, const SymbolicRun& run, size_t transition);

/// Result of matching a query word against the automaton.
struct SymbolicMatch {
    enum Status {
        Accepted,
        NoTransition,  // no transition instantiates to G_i at step i
        Infeasible,    // matched transitions but the accumulated guard is unsat
        UndecidedSat,  // solver could not decide the accumulated guard
    } status = NoTransition;
    size_t failed_index = 0; // 1-based step index for rejections
    SymbolicRun run;         // the matched prefix

    bool accepted() const { return status == Accepted; }
};

/// The unique symbolic run with strace = w, if w is in the automaton's
/// symbolic language; otherwise the failing index and reason.
SymbolicMatch symbolic_run(const RegisterAutomaton& a, const SymbolicWord& w,
                           const Theory& th);

struct EnumeratedRun {
    SymbolicRun run;
    bool undetermined = false; // accumulated guard satisfiability unknown
};

/// All symbolic runs of length ≤ depth whose accumulated guards are
/// satisfiable, plus the runs the solver could not decide (flagged). Branches
/// with unsatisfiable accumulated guards are pruned. Deterministic order.
std::vector<EnumeratedRun> enumerate_symbolic_runs(const RegisterAutomaton& a,
                                                   int depth, const Theory& th);

struct EnumerationResult {
    std::vector<SymbolicWord> words;        // sorted; the bounded symbolic language
    std::vector<SymbolicWord> undetermined; // sorted; unknown satisfiability
    size_t undefined_skips = 0; // extensions whose guard read an unset register
};

/// { w ∈ L_s(A) : length(w) ≤ depth }, sorted.
EnumerationResult enumerate_symbolic(const RegisterAutomaton& a, int depth,
                                     const Theory& th);

/// run_A(δ, ξ): instantiates a symbolic run with a valuation of its markers.
/// Requires ξ total on v1..vn and ξ ⊨ guard(strace(δ)); throws
/// WitnessRejectedError otherwise.
Run concretize(const RegisterAutomaton& a, const SymbolicRun& delta, const Valuation& xi);

/// The inverse direction: the symbolic run tracking γ's transitions, plus
/// the marker valuation ξ(v_i) = d_i. concretize(abstract_run(γ)) == γ.
std::pair<SymbolicRun, Valuation> abstract_run(const RegisterAutomaton& a, const Run& gamma);

/// Bounded well-formedness: explores all symbolic runs up to the given depth
/// and reports the first transition whose guard reads an unassigned register.
struct BoundedWellFormedness {
    enum Verdict { Ok, Counterexample, Undecided } verdict = Ok;
    SymbolicRun witness_run;              // Counterexample only
    std::optional<size_t> offending;      // transition index
    bool witness_prefix_undetermined = false;

    bool ok() const { return verdict == Ok; }
};

BoundedWellFormedness check_well_formed_bounded(const RegisterAutomaton& a, int depth,
                                                const Theory& th);

} // namespace ra

#endif
