#include "ra/equiv.hpp"

#include <algorithm>
#include <random>

namespace ra {

namespace {

bool contains(const std::vector<SymbolicWord>& sorted, const SymbolicWord& w)
{
    auto it = std::lower_bound(sorted.begin(), sorted.end(), w, word_less);
    return it != sorted.end() && compare_words(*it, w) == 0;
}

std::vector<Symbol> symbols_of(const SymbolicWord& w)
{
    std::vector<Symbol> out;
    for (const SymbolicStep& s : w)
        out.push_back(s.symbol);
    return out;
}

DataWord data_word_from(const SymbolicWord& w, const Valuation& xi)
{
    DataWord dw;
    for (size_t i = 0; i < w.size(); ++i) {
        Variable marker = Variable::marker(static_cast<int>(i) + 1);
        auto found = xi.find(marker);
        dw.push_back(DataSymbol{w[i].symbol,
                                found == xi.end() ? Rational(0) : found->second});
    }
    return dw;
}

EquivalenceVerdict symbolic_equivalence(const RegisterAutomaton& a,
                                        const RegisterAutomaton& b, int depth,
                                        const Theory& th)
{
    EquivalenceVerdict verdict;
    verdict.mode = EquivMode::Symbolic;
    verdict.depth = depth;
    EnumerationResult ea = enumerate_symbolic(a, depth, th);
    EnumerationResult eb = enumerate_symbolic(b, depth, th);

    for (const SymbolicWord& w : ea.words)
        if (!contains(eb.words, w) && !contains(eb.undetermined, w)) {
            verdict.result = EquivalenceVerdict::Inequivalent;
            verdict.counterexample = w;
            verdict.accepting_side = 1;
            return verdict;
        }
    for (const SymbolicWord& w : eb.words)
        if (!contains(ea.words, w) && !contains(ea.undetermined, w)) {
            verdict.result = EquivalenceVerdict::Inequivalent;
            verdict.counterexample = w;
            verdict.accepting_side = 2;
            return verdict;
        }
    if (!ea.undetermined.empty() || !eb.undetermined.empty()) {
        verdict.result = EquivalenceVerdict::Undecided;
        verdict.note = "some accumulated guards have undecided satisfiability";
        return verdict;
    }
    verdict.result = EquivalenceVerdict::Equal;
    return verdict;
}

/// One direction of the data-language check; fills the verdict and returns
/// true when a certified counterexample was found.
bool data_difference(const RegisterAutomaton& accepting,
                     const RegisterAutomaton& other,
                     const EnumerationResult& accepting_words,
                     const EnumerationResult& other_words, int side,
                     const Theory& th, EquivalenceVerdict& verdict, bool& undecided)
{
    for (const SymbolicWord& w : accepting_words.words) {
        std::vector<Symbol> symbols = symbols_of(w);
        std::vector<Guard> other_guards;
        for (const SymbolicWord& u : other_words.words)
            if (symbols_of(u) == symbols)
                other_guards.push_back(word_guard(u));

        Guard difference = Guard::conj(
            word_guard(w), Guard::negate(Guard::disj(std::move(other_guards))));
        SatResult sat = is_satisfiable(difference, th);
        if (sat.unsat())
            continue;

        if (sat.sat()) {
            DataWord dw = data_word_from(w, sat.witness);
            // Replay; an undetermined word on the other side may still accept.
            if (run_word(accepting, dw).accepted() && !run_word(other, dw).accepted()) {
                verdict.result = EquivalenceVerdict::Inequivalent;
                verdict.counterexample = w;
                verdict.data_counterexample = dw;
                verdict.accepting_side = side;
                return true;
            }
            undecided = true;
            continue;
        }

        // Solver gave up (nonlinear guards); fall back to seeded sampling.
        undecided = true;
        std::mt19937 rng(0xd1ff);
        std::uniform_int_distribution<int> num(-40, 40);
        std::uniform_int_distribution<int> den(1, 2);
        for (int attempt = 0; attempt < 2000; ++attempt) {
            Valuation xi;
            for (size_t i = 1; i <= w.size(); ++i)
                xi[Variable::marker(static_cast<int>(i))] = Rational(num(rng), den(rng));
            DataWord dw = data_word_from(w, xi);
            bool in_a = run_word(accepting, dw).accepted();
            bool in_b = run_word(other, dw).accepted();
            if (in_a != in_b) {
                verdict.result = EquivalenceVerdict::Inequivalent;
                verdict.counterexample = w;
                verdict.data_counterexample = dw;
                verdict.accepting_side = in_a ? side : 3 - side;
                verdict.sampled = true;
                return true;
            }
        }
    }
    return false;
}

EquivalenceVerdict data_equivalence(const RegisterAutomaton& a,
                                    const RegisterAutomaton& b, int depth,
                                    const Theory& th)
{
    EquivalenceVerdict verdict;
    verdict.mode = EquivMode::Data;
    verdict.depth = depth;
    EnumerationResult ea = enumerate_symbolic(a, depth, th);
    EnumerationResult eb = enumerate_symbolic(b, depth, th);

    bool undecided = !ea.undetermined.empty() || !eb.undetermined.empty();
    if (data_difference(a, b, ea, eb, 1, th, verdict, undecided))
        return verdict;
    if (data_difference(b, a, eb, ea, 2, th, verdict, undecided))
        return verdict;
    if (undecided) {
        verdict.result = EquivalenceVerdict::Undecided;
        verdict.sampled = true;
        verdict.note = "difference guards undecided; sampling found no counterexample";
        return verdict;
    }
    verdict.result = EquivalenceVerdict::Equal;
    return verdict;
}

} // namespace

EquivalenceVerdict check_equivalence(const RegisterAutomaton& a,
                                     const RegisterAutomaton& b, EquivMode mode,
                                     int depth, const Theory& th)
{
    return mode == EquivMode::Symbolic ? symbolic_equivalence(a, b, depth, th)
                                       : data_equivalence(a, b, depth, th);
}

} // namespace ra
