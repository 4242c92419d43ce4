#ifndef RA_ERRORS_HPP
#define RA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ra {

/// A guard or assignment referenced a variable that is not in scope
/// (unassigned register, marker outside the current prefix, ...).
class UndefinedVariableError : public std::runtime_error {
public:
    explicit UndefinedVariableError(const std::string& what)
        : std::runtime_error(what) {}
};

/// A valuation offered as a witness does not satisfy the guard it claims to.
class WitnessRejectedError : public std::runtime_error {
public:
    explicit WitnessRejectedError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Structural problem in an automaton definition (unknown location,
/// non-injective assignment, guard over undeclared registers, ...).
class AutomatonError : public std::runtime_error {
public:
    explicit AutomatonError(const std::string& what)
        : std::runtime_error(what) {}
};

/// A relation presentation breaks its shape contracts (partial/total maps,
/// marker sharing inside one word, dangling word indices).
class PresentationError : public std::runtime_error {
public:
    explicit PresentationError(const std::string& what)
        : std::runtime_error(what) {}
};

/// A well-definedness check of the automaton construction from relations
/// failed; indicates a gap the condition checker should have caught.
class SynthesisError : public std::runtime_error {
public:
    explicit SynthesisError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Malformed textual input (guards, words, automaton files, presentations).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace ra

#endif
