#ifndef RA_TEXT_HPP
#define RA_TEXT_HPP

#include "ra/automaton.hpp"
#include "ra/nerode.hpp"
#include "ra/symbolic.hpp"

#include <iosfwd>
#include <string>

namespace ra {

/// Infix guard syntax: comparisons of polynomial expressions over markers
/// (v1, v2, ...), register names and p, with rational literals (7, -7, 0.5,
/// 1/2), operators + - *, abs bars |e|, and the connectives ! && || plus
/// true/false. Examples: "x <= p", "|p| <= 30 && p = K * (sp - sv)".
Guard parse_guard(const std::string& text);
std::string print_guard(const Guard& g);

/// "a [true] ; a [v1 <= v2]"; the empty word prints/parses as "epsilon".
SymbolicWord parse_symbolic_word(const std::string& text);
std::string print_symbolic_word(const SymbolicWord& w);

/// "a(1) a(4) a(0) a(7)"; the empty word is "epsilon".
DataWord parse_data_word(const std::string& text);
std::string print_data_word(const DataWord& w);

std::string print_configuration(const Configuration& c);
std::string print_valuation(const Valuation& xi);
std::string print_renaming(const Renaming& rho);

/// Line-oriented automaton format:
///   alphabet: a b
///   registers: x y
///   initial: q0
///   q0 --a[ true ]{ x := p }--> q1
/// '#' starts a comment. parse(print(A)) == A on canonical forms.
RegisterAutomaton parse_automaton(std::istream& in);
RegisterAutomaton parse_automaton_text(const std::string& text);
RegisterAutomaton load_automaton(const std::string& path);
std::string print_automaton(const RegisterAutomaton& a);

/// Sample file: "depth: k" then one symbolic word per line, sorted.
LanguageSample parse_sample(std::istream& in, const Theory& th);
LanguageSample load_sample(const std::string& path, const Theory& th);
std::string print_sample(const LanguageSample& s);

/// Presentation file: sections [loc], [trans], [reg]; lines
/// "word-index -> class-id" ("word-index marker -> class-id" under [reg]).
RelationPresentation parse_presentation(std::istream& in, const LanguageSample& sample);
RelationPresentation load_presentation(const std::string& path,
                                       const LanguageSample& sample);
std::string print_presentation(const RelationPresentation& p,
                               const LanguageSample& sample);

} // namespace ra

#endif
