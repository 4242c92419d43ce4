#ifndef RA_EQUIV_HPP
#define RA_EQUIV_HPP

#include "ra/symbolic.hpp"

#include <optional>
#include <string>

namespace ra {

enum class EquivMode { Data, Symbolic };

/// Outcome of the bounded equivalence check. Counterexamples replay:
/// the symbolic word (symbolic mode) or data word (data mode) is accepted by
/// exactly one of the two automata at the stated depth.
struct EquivalenceVerdict {
    EquivMode mode = EquivMode::Symbolic;
    int depth = 0;
    enum Result { Equal, Inequivalent, Undecided } result = Equal;

    std::optional<SymbolicWord> counterexample;
    std::optional<DataWord> data_counterexample;
    int accepting_side = 0; // 1 or 2 when a counterexample exists
    bool sampled = false;   // the data counterexample came from sampling
    std::string note;

    bool equal() const { return result == Equal; }
};

/// Symbolic mode compares the bounded symbolic languages up to alpha
/// equality. Data mode certifies, per enumerated word, that every
/// concretization is accepted by the other side: guard(w) ∧ ¬(∨ guards of
/// the other side's same-symbol-sequence words) must be unsatisfiable; when
/// the solver cannot decide, a seeded randomized witness search runs and any
/// verdict it produces is marked `sampled`.
EquivalenceVerdict check_equivalence(const RegisterAutomaton& a,
                                     const RegisterAutomaton& b, EquivMode mode,
                                     int depth, const Theory& th);

} // namespace ra

#endif
