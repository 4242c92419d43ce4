#ifndef RA_NERODE_HPP
#define RA_NERODE_HPP

#include "ra/symbolic.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ra {

/// Depth-bounded, prefix-closed set of feasible symbolic words, sorted by
/// word_less. Contains the empty word. Word indices below refer to `words`.
struct LanguageSample {
    int depth = 0;
    std::vector<SymbolicWord> words;

    size_t size() const { return words.size(); }
    std::optional<size_t> index_of(const SymbolicWord& w) const;
    /// Index of the word minus its last step; nullopt for the empty word.
    std::optional<size_t> prefix_of(size_t word) const;
};

/// Validates the sample invariants (ε present, prefix closed, lengths within
/// depth, members feasible); throws PresentationError. Words whose
/// feasibility the solver cannot decide are accepted but reported back
/// through `undetermined` when non-null.
LanguageSample make_sample(std::vector<SymbolicWord> words, int depth, const Theory& th,
                           std::vector<SymbolicWord>* undetermined = nullptr);

/// Finite presentation of (≡l, ≡t, ≡r) over a sample: total location class
/// per word, total transition class per nonempty word, partial register
/// class per (word, marker). Class identity is the id; names are display
/// labels for files and reports.
struct RelationPresentation {
    std::vector<int> loc;   // per word index
    std::vector<int> trans; // per word index; -1 exactly for the empty word
    std::map<std::pair<size_t, int>, int> reg; // (word index, marker index) -> class

    std::vector<std::string> loc_names, trans_names, reg_names;

    bool stores(size_t word, int marker) const { return reg.count({word, marker}) > 0; }
    std::optional<int> reg_class(size_t word, int marker) const;
    /// Marker of `word` in register class `cls`, if any (unique by
    /// Condition 1).
    std::optional<int> marker_in_class(size_t word, int cls) const;

    int location_class_count() const;
    int transition_class_count() const;
    int register_class_count() const;
};

/// Shape contracts: sizes match the sample, trans defined exactly on
/// nonempty words, reg markers within word length, and no two markers of one
/// word in the same class. Throws PresentationError.
void validate_presentation(const LanguageSample& sample, const RelationPresentation& p);

struct ExtractionResult {
    LanguageSample sample;
    RelationPresentation presentation;
    std::vector<SymbolicWord> undetermined; // excluded: unknown satisfiability
};

/// The relations induced by an automaton on its bounded symbolic language:
/// location class = final location of symb(w), transition class = final
/// transition, register classes keyed by the register holding the marker.
ExtractionResult extract_relations(const RegisterAutomaton& a, int depth,
                                   const Theory& th);

/// matching(w, w') — maps each stored marker of w to the marker of w' in the
/// same register class, and v_{m+1} to v_{n+1}. Always injective; throws
/// PresentationError if the presentation breaks Condition 1.
Renaming matching(const LanguageSample& sample, const RelationPresentation& p,
                  size_t w, size_t w2);

struct ConditionViolation {
    int condition = 0;                     // 1..11
    std::vector<size_t> words;             // sample indices involved
    std::optional<SymbolicWord> extension; // condition 10: the missing word
    std::string detail;
};

struct ConditionReport {
    std::vector<ConditionViolation> violations;
    int boundary_skips = 0; // condition-10 conclusions beyond the depth bound
    int unknowns = 0;       // satisfiability sub-checks the solver couldn't decide

    bool ok() const { return violations.empty(); }
};

/// Instantiates every regularity condition over all sample members (pairs
/// and extensions as required) and reports violations with witnesses.
ConditionReport check_conditions(const LanguageSample& sample,
                                 const RelationPresentation& p, const Theory& th);

/// Sanity direction implied by the determinism condition: equal-location
/// words with alpha-equal (up to matching) extensions must share the
/// extension's transition class.
struct DerivedDeterminismReport {
    struct Failure {
        size_t w, w2; // the ≡l pair
        size_t u, u2; // their extensions that should be ≡t
    };
    std::vector<Failure> failures;
    int unknowns = 0;

    bool ok() const { return failures.empty(); }
};

DerivedDeterminismReport check_derived_determinism(const LanguageSample& sample,
                                                   const RelationPresentation& p,
                                                   const Theory& th);

/// Builds the register automaton whose locations, transitions and registers
/// are the presentation's classes. Registers are named r0, r1, ... in order
/// of first appearance in sorted sample order; each transition takes its
/// guard from the lexicographically least member of its class (all members
/// are asserted to agree up to matching). Throws SynthesisError when a
/// well-definedness check fails.
RegisterAutomaton synthesize(const LanguageSample& sample,
                             const RelationPresentation& p, const Theory& th);

} // namespace ra

#endif
