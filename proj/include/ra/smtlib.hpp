#ifndef RA_SMTLIB_HPP
#define RA_SMTLIB_HPP

#include "ra/guard.hpp"
#include "ra/theory.hpp"

#include <string>

namespace ra {

/// Renders the guard as an SMT-LIB v2 script: declare-const per variable
/// (markers as v<i>, registers by name, the parameter as p), one assert,
/// check-sat, get-model.
std::string to_smtlib(const Guard& g);

/// Runs `solver_cmd` as a subprocess with the script on stdin. The verdict
/// is the first output line (sat/unsat/unknown); on sat, a model in
/// define-fun or get-value shape is parsed and verified against g, and an
/// unverifiable model degrades to unknown.
SatResult smt_solve_external(const Guard& g, const std::string& solver_cmd);

} // namespace ra

#endif
