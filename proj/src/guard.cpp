#include "ra/guard.hpp"

#include <algorithm>
#include <sstream>

namespace ra {

bool is_injective(const Renaming& sigma)
{
    std::set<Variable> seen;
    for (const auto& [from, to] : sigma)
        if (!seen.insert(to).second)
            return false;
    return true;
}

int Atom::degree() const
{
    int d = 0;
    for (const auto& [mono, coeff] : poly)
        d = std::max(d, mono.degree());
    return d;
}

std::vector<Variable> Atom::args() const
{
    std::vector<Variable> out;
    for (const auto& [mono, coeff] : poly)
        for (const Variable& v : mono.vars)
            if (std::find(out.begin(), out.end(), v) == out.end())
                out.push_back(v);
    return out;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b)
{
    if (auto c = a.cmp <=> b.cmp; c != 0)
        return c;
    auto ia = a.poly.begin();
    auto ib = b.poly.begin();
    for (; ia != a.poly.end() && ib != b.poly.end(); ++ia, ++ib) {
        if (auto c = ia->first <=> ib->first; c != 0)
            return c;
        if (ia->second < ib->second)
            return std::strong_ordering::less;
        if (ib->second < ia->second)
            return std::strong_ordering::greater;
    }
    if (ia != a.poly.end())
        return std::strong_ordering::greater;
    if (ib != b.poly.end())
        return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

namespace {

void add_term(Polynomial& p, Monomial m, const Rational& coeff)
{
    if (coeff == 0)
        return;
    auto [it, inserted] = p.emplace(std::move(m), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0)
            p.erase(it);
    }
}

/// Scales the atom so the first non-constant monomial has coefficient ±1
/// (+1 for equalities, where both signs denote the same relation).
void normalize_atom(Atom& a)
{
    auto lead = a.poly.end();
    for (auto it = a.poly.begin(); it != a.poly.end(); ++it) {
        if (it->first.degree() > 0) {
            lead = it;
            break;
        }
    }
    if (lead == a.poly.end())
        return; // constant atom; folded by the caller
    Rational scale = abs(lead->second);
    if (a.cmp == Cmp::Eq && lead->second < 0)
        scale = -scale;
    if (scale != 1)
        for (auto& [mono, coeff] : a.poly)
            coeff /= scale;
}

bool eval_cmp(Cmp cmp, const Rational& lhs)
{
    switch (cmp) {
    case Cmp::Eq:
        return lhs == 0;
    case Cmp::Lt:
        return lhs < 0;
    case Cmp::Le:
        return lhs <= 0;
    }
    return false;
}

} // namespace

Guard Guard::raw(GuardKind k, std::vector<Guard> ch)
{
    Guard g;
    g.kind_ = k;
    g.children_ = std::move(ch);
    return g;
}

Guard Guard::falsity()
{
    return raw(GuardKind::Not, {Guard::truth()});
}

bool Guard::is_false() const
{
    return kind_ == GuardKind::Not && children_[0].is_true();
}

Guard Guard::atom(Atom a)
{
    // Combine already happened via Polynomial; drop explicit zeros.
    for (auto it = a.poly.begin(); it != a.poly.end();)
        it = it->second == 0 ? a.poly.erase(it) : std::next(it);
    bool constant = true;
    for (const auto& [mono, coeff] : a.poly)
        if (mono.degree() > 0)
            constant = false;
    if (constant) {
        Rational value = a.poly.empty() ? Rational(0) : a.poly.begin()->second;
        return eval_cmp(a.cmp, value) ? truth() : falsity();
    }
    normalize_atom(a);
    Guard g;
    g.kind_ = GuardKind::Atom;
    g.atom_ = std::move(a);
    return g;
}

Guard Guard::cmp(Cmp op, Polynomial lhs, Polynomial rhs)
{
    Atom a;
    a.cmp = op;
    a.poly = poly_sub(std::move(lhs), rhs);
    return atom(std::move(a));
}

Guard Guard::negate(Guard g)
{
    switch (g.kind_) {
    case GuardKind::True:
        return falsity();
    case GuardKind::Atom:
        return raw(GuardKind::Not, {std::move(g)});
    case GuardKind::Not:
        return std::move(g.children_[0]);
    case GuardKind::And: {
        std::vector<Guard> ch;
        ch.reserve(g.children_.size());
        for (Guard& c : g.children_)
            ch.push_back(negate(std::move(c)));
        return disj(std::move(ch));
    }
    case GuardKind::Or: {
        std::vector<Guard> ch;
        ch.reserve(g.children_.size());
        for (Guard& c : g.children_)
            ch.push_back(negate(std::move(c)));
        return conj(std::move(ch));
    }
    }
    return g;
}

Guard Guard::conj(std::vector<Guard> children)
{
    std::vector<Guard> flat;
    for (Guard& c : children) {
        if (c.is_true())
            continue;
        if (c.is_false())
            return falsity();
        if (c.kind_ == GuardKind::And)
            for (Guard& gc : c.children_)
                flat.push_back(std::move(gc));
        else
            flat.push_back(std::move(c));
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty())
        return truth();
    if (flat.size() == 1)
        return std::move(flat[0]);
    return raw(GuardKind::And, std::move(flat));
}

Guard Guard::disj(std::vector<Guard> children)
{
    std::vector<Guard> flat;
    for (Guard& c : children) {
        if (c.is_false())
            continue;
        if (c.is_true())
            return truth();
        if (c.kind_ == GuardKind::Or)
            for (Guard& gc : c.children_)
                flat.push_back(std::move(gc));
        else
            flat.push_back(std::move(c));
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty())
        return falsity();
    if (flat.size() == 1)
        return std::move(flat[0]);
    return raw(GuardKind::Or, std::move(flat));
}

bool operator==(const Guard& a, const Guard& b)
{
    return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Guard& a, const Guard& b)
{
    if (auto c = a.kind_ <=> b.kind_; c != 0)
        return c;
    if (a.kind_ == GuardKind::Atom)
        return a.atom_ <=> b.atom_;
    if (auto c = a.children_.size() <=> b.children_.size(); c != 0)
        return c;
    for (size_t i = 0; i < a.children_.size(); ++i)
        if (auto c = a.children_[i] <=> b.children_[i]; c != 0)
            return c;
    return std::strong_ordering::equal;
}

namespace {

void collect_vars(const Guard& g, std::set<Variable>& out)
{
    switch (g.kind()) {
    case GuardKind::True:
        return;
    case GuardKind::Atom:
        for (const auto& [mono, coeff] : g.as_atom().poly)
            out.insert(mono.vars.begin(), mono.vars.end());
        return;
    default:
        for (const Guard& c : g.children())
            collect_vars(c, out);
    }
}

bool eval_atom(const Atom& a, const Valuation& xi)
{
    Rational sum = 0;
    for (const auto& [mono, coeff] : a.poly) {
        Rational term = coeff;
        for (const Variable& v : mono.vars)
            term *= xi.at(v);
        sum += term;
    }
    return eval_cmp(a.cmp, sum);
}

bool eval_rec(const Guard& g, const Valuation& xi)
{
    switch (g.kind()) {
    case GuardKind::True:
        return true;
    case GuardKind::Atom:
        return eval_atom(g.as_atom(), xi);
    case GuardKind::Not:
        return !eval_rec(g.children()[0], xi);
    case GuardKind::And:
        for (const Guard& c : g.children())
            if (!eval_rec(c, xi))
                return false;
        return true;
    case GuardKind::Or:
        for (const Guard& c : g.children())
            if (eval_rec(c, xi))
                return true;
        return false;
    }
    return false;
}

Guard rename_rec(const Guard& g, const Renaming& sigma)
{
    switch (g.kind()) {
    case GuardKind::True:
        return Guard::truth();
    case GuardKind::Atom: {
        Atom out;
        out.cmp = g.as_atom().cmp;
        for (const auto& [mono, coeff] : g.as_atom().poly) {
            Monomial m;
            m.vars.reserve(mono.vars.size());
            for (const Variable& v : mono.vars)
                m.vars.push_back(sigma.at(v));
            std::sort(m.vars.begin(), m.vars.end());
            add_term(out.poly, std::move(m), coeff);
        }
        return Guard::atom(std::move(out));
    }
    case GuardKind::Not:
        return Guard::negate(rename_rec(g.children()[0], sigma));
    case GuardKind::And: {
        std::vector<Guard> ch;
        for (const Guard& c : g.children())
            ch.push_back(rename_rec(c, sigma));
        return Guard::conj(std::move(ch));
    }
    case GuardKind::Or: {
        std::vector<Guard> ch;
        for (const Guard& c : g.children())
            ch.push_back(rename_rec(c, sigma));
        return Guard::disj(std::move(ch));
    }
    }
    return Guard::truth();
}

} // namespace

std::set<Variable> vars(const Guard& g)
{
    std::set<Variable> out;
    collect_vars(g, out);
    return out;
}

bool eval_guard(const Guard& g, const Valuation& xi)
{
    for (const Variable& v : vars(g))
        if (!xi.count(v))
            throw UndefinedVariableError("guard reads undefined variable " + v.str());
    return eval_rec(g, xi);
}

Guard rename_guard(const Guard& g, const Renaming& sigma)
{
    for (const Variable& v : vars(g))
        if (!sigma.count(v))
            throw UndefinedVariableError("renaming undefined on variable " + v.str());
    return rename_rec(g, sigma);
}

bool alpha_equal(const Guard& a, const Guard& b)
{
    return a == b;
}

Polynomial poly_var(const Variable& v)
{
    Polynomial p;
    p[Monomial{{v}}] = 1;
    return p;
}

Polynomial poly_const(const Rational& c)
{
    Polynomial p;
    add_term(p, Monomial{}, c);
    return p;
}

Polynomial poly_add(Polynomial a, const Polynomial& b)
{
    for (const auto& [mono, coeff] : b)
        add_term(a, mono, coeff);
    return a;
}

Polynomial poly_sub(Polynomial a, const Polynomial& b)
{
    for (const auto& [mono, coeff] : b)
        add_term(a, mono, -coeff);
    return a;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b)
{
    Polynomial out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m;
            m.vars.reserve(ma.vars.size() + mb.vars.size());
            m.vars.insert(m.vars.end(), ma.vars.begin(), ma.vars.end());
            m.vars.insert(m.vars.end(), mb.vars.begin(), mb.vars.end());
            std::sort(m.vars.begin(), m.vars.end());
            add_term(out, std::move(m), ca * cb);
        }
    return out;
}

} // namespace ra
