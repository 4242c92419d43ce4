#ifndef RA_GUARD_HPP
#define RA_GUARD_HPP

#include "ra/errors.hpp"
#include "ra/rational.hpp"
#include "ra/variable.hpp"

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ra {

/// Partial map from variables to data values.
using Valuation = std::map<Variable, Rational>;

/// Partial map from variables to variables.
using Renaming = std::map<Variable, Variable>;

bool is_injective(const Renaming& sigma);

/// Product of variables, kept sorted; the empty monomial is the constant slot.
struct Monomial {
    std::vector<Variable> vars;

    int degree() const { return static_cast<int>(vars.size()); }
    friend bool operator==(const Monomial& a, const Monomial& b) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        if (auto c = a.vars.size() <=> b.vars.size(); c != 0)
            return c;
        return a.vars <=> b.vars;
    }
};

/// Sum of coeff * monomial; canonical form has no zero coefficients.
using Polynomial = std::map<Monomial, Rational>;

enum class Cmp { Eq, Lt, Le };

/// One interpreted relation atom, normalized to "poly ⋈ 0". The relation
/// symbol is the polynomial template with variables abstracted away; its
/// arguments are the distinct variables in template order.
struct Atom {
    Cmp cmp = Cmp::Eq;
    Polynomial poly;

    int degree() const;
    bool is_linear() const { return degree() <= 1; }
    std::vector<Variable> args() const;

    friend bool operator==(const Atom& a, const Atom& b) = default;
    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

/// Relation-symbol view of an atom: name is the polynomial template rendered
/// with placeholders _1.._n, arity the number of distinct argument variables.
struct RelationSymbol {
    std::string name;
    int arity = 0;

    friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
    friend std::strong_ordering operator<=>(const RelationSymbol&,
                                            const RelationSymbol&) = default;
};

enum class GuardKind { True, Atom, Not, And, Or };

/// Immutable guard AST, always held in canonical form: negation normal form
/// with constant subterms folded and And/Or children flattened, deduplicated
/// and structurally sorted. Two guards are syntactically equal (the ≡ used
/// throughout) iff operator== holds.
class Guard {
public:
    /// ⊤
    Guard() : kind_(GuardKind::True) {}

    static Guard truth() { return Guard(); }
    static Guard falsity(); // ¬⊤, the canonical unsatisfiable guard
    static Guard atom(Atom a);
    /// Convenience: lhs ⋈ rhs as polynomials.
    static Guard cmp(Cmp op, Polynomial lhs, Polynomial rhs);
    static Guard negate(Guard g);
    static Guard conj(std::vector<Guard> children);
    static Guard disj(std::vector<Guard> children);
    static Guard conj(Guard a, Guard b) { return conj(std::vector<Guard>{std::move(a), std::move(b)}); }
    static Guard disj(Guard a, Guard b) { return disj(std::vector<Guard>{std::move(a), std::move(b)}); }

    GuardKind kind() const { return kind_; }
    bool is_true() const { return kind_ == GuardKind::True; }
    bool is_false() const;
    const Atom& as_atom() const { return atom_; }
    /// Children of And/Or; the single child of Not.
    const std::vector<Guard>& children() const { return children_; }

    friend bool operator==(const Guard& a, const Guard& b);
    friend std::strong_ordering operator<=>(const Guard& a, const Guard& b);

private:
    GuardKind kind_;
    Atom atom_;                  // GuardKind::Atom only
    std::vector<Guard> children_; // Not/And/Or

    static Guard raw(GuardKind k, std::vector<Guard> ch);
};

/// Var(g): the exact set of variables occurring in g.
std::set<Variable> vars(const Guard& g);

/// Truth of g under xi, per the inductive satisfaction relation.
/// Requires Var(g) ⊆ domain(xi); throws UndefinedVariableError otherwise.
bool eval_guard(const Guard& g, const Valuation& xi);

/// g[sigma]: every variable occurrence replaced by its image, result
/// re-canonicalized. Requires Var(g) ⊆ domain(sigma).
Guard rename_guard(const Guard& g, const Renaming& sigma);

/// Syntactic equality of canonical forms. Guards are canonical by
/// construction, so this is plain structural equality.
bool alpha_equal(const Guard& a, const Guard& b);

/// Convenience builders used all over the test and model code.
Polynomial poly_var(const Variable& v);
Polynomial poly_const(const Rational& c);
Polynomial poly_add(Polynomial a, const Polynomial& b);
Polynomial poly_sub(Polynomial a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

} // namespace ra

#endif
