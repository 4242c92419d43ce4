#ifndef RA_THEORY_HPP
#define RA_THEORY_HPP

#include "ra/guard.hpp"

#include <string>

namespace ra {

/// What the theory can decide: the built-in exact linear fragment, the same
/// plus an external SMT-LIB process for nonlinear atoms, or evaluation only.
enum class SolverMode { LinearExact, External, None };

enum class SatKind { Sat, Unsat, Unknown };

struct SatResult {
    SatKind kind = SatKind::Unknown;
    Valuation witness; // nonempty contract: kind == Sat implies eval_guard holds
    std::string note;

    bool sat() const { return kind == SatKind::Sat; }
    bool unsat() const { return kind == SatKind::Unsat; }
    bool unknown() const { return kind == SatKind::Unknown; }

    static SatResult make_sat(Valuation w) { return {SatKind::Sat, std::move(w), {}}; }
    static SatResult make_unsat() { return {SatKind::Unsat, {}, {}}; }
    static SatResult make_unknown(std::string note)
    {
        return {SatKind::Unknown, {}, std::move(note)};
    }
};

/// The data theory: exact rationals with polynomial-comparison relation
/// symbols. Atoms always evaluate (total, decidable); satisfiability depends
/// on the solver mode. Immutable; pure functions only.
class Theory {
public:
    static Theory linear() { return Theory(SolverMode::LinearExact, {}); }
    static Theory external(std::string solver_cmd)
    {
        return Theory(SolverMode::External, std::move(solver_cmd));
    }
    static Theory none() { return Theory(SolverMode::None, {}); }

    SolverMode mode() const { return mode_; }
    const std::string& solver_command() const { return solver_cmd_; }

    /// Domain descriptor.
    std::string domain() const { return "rational"; }

    /// Every polynomial comparison over rationals is a declared symbol.
    bool declares(const Atom&) const { return true; }
    bool atom_is_linear(const Atom& a) const { return a.is_linear(); }

    /// Relation-symbol view: template name with placeholders _1.._n.
    RelationSymbol symbol_of(const Atom& a) const;

private:
    Theory(SolverMode mode, std::string cmd)
        : mode_(mode), solver_cmd_(std::move(cmd)) {}

    SolverMode mode_;
    std::string solver_cmd_;
};

/// Sat(g). `sat` always carries a witness that eval_guard validates; `unsat`
/// is sound for the linear fragment (and for any conjunct whose linear
/// abstraction is already infeasible); `unknown` arises only for atoms
/// outside solver capability or guards past the DNF size cap.
SatResult is_satisfiable(const Guard& g, const Theory& th);

} // namespace ra

#endif
