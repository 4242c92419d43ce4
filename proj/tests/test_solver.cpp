#include <doctest.h>

#include "ra/gallery.hpp"
#include "ra/smtlib.hpp"
#include "ra/symbolic.hpp"
#include "ra/text.hpp"

#include "support/generators.hpp"

#include <cstdlib>
#include <fstream>
#include <random>

using namespace ra;

namespace {

const Theory th = Theory::linear();

/// Exhaustive search over a small rational grid; the independent oracle for
/// the linear solver.
std::optional<Valuation> grid_search(const Guard& g, const std::vector<Rational>& grid)
{
    std::set<Variable> gv = vars(g);
    std::vector<Variable> vs(gv.begin(), gv.end());
    std::vector<size_t> idx(vs.size(), 0);
    for (;;) {
        Valuation xi;
        for (size_t i = 0; i < vs.size(); ++i)
            xi[vs[i]] = grid[idx[i]];
        if (eval_guard(g, xi))
            return xi;
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == grid.size()) {
            idx[k] = 0;
            ++k;
        }
        if (k == idx.size())
            break;
        if (vs.empty())
            break;
    }
    return std::nullopt;
}

std::vector<Rational> small_grid()
{
    return {-2, -1, Rational(-1, 2), 0, Rational(1, 2), 1, 2};
}

} // namespace

TEST_CASE("satisfiability on the worked examples")
{
    SatResult r = is_satisfiable(parse_guard("v1 <= v2 && v3 < v2 && v3 <= v4"), th);
    REQUIRE(r.sat());
    CHECK(eval_guard(parse_guard("v1 <= v2 && v3 < v2 && v3 <= v4"), r.witness));
    // The published witness works too.
    Valuation xi{{Variable::marker(1), 1},
                 {Variable::marker(2), 4},
                 {Variable::marker(3), 0},
                 {Variable::marker(4), 7}};
    CHECK(eval_guard(parse_guard("v1 <= v2 && v3 < v2 && v3 <= v4"), xi));

    CHECK(is_satisfiable(parse_guard("v1 < v1"), th).unsat());
    CHECK(is_satisfiable(Guard::truth(), th).sat());
    CHECK(is_satisfiable(Guard::falsity(), th).unsat());
}

TEST_CASE("negated atoms and disjunctions")
{
    SatResult r = is_satisfiable(parse_guard("!(v1 <= v2)"), th);
    REQUIRE(r.sat());
    CHECK(eval_guard(parse_guard("v2 < v1"), r.witness));

    CHECK(is_satisfiable(parse_guard("!(v1 = v2) && v1 = v2"), th).unsat());
    CHECK(is_satisfiable(parse_guard("v1 < 0 || v1 = 0 || 0 < v1"), th).sat());
    CHECK(is_satisfiable(parse_guard("!(v1 < 0 || v1 = 0 || 0 < v1)"), th).unsat());
}

TEST_CASE("equalities feed substitution")
{
    SatResult r =
        is_satisfiable(parse_guard("v1 + v2 = v3 && v3 = 10 && v1 = 4 && v2 < 7"), th);
    REQUIRE(r.sat());
    CHECK(r.witness.at(Variable::marker(2)) == 6);
    CHECK(is_satisfiable(parse_guard("v1 + v2 = v3 && v3 = 10 && v1 = 4 && v2 < 6"), th)
              .unsat());
}

TEST_CASE("strictness is tracked exactly")
{
    CHECK(is_satisfiable(parse_guard("v1 < v2 && v2 < v1"), th).unsat());
    CHECK(is_satisfiable(parse_guard("v1 <= v2 && v2 <= v1"), th).sat());
    CHECK(is_satisfiable(parse_guard("v1 < v2 && v2 < v3 && v3 < v1"), th).unsat());
    // Tight rational corridors stay solvable.
    SatResult r = is_satisfiable(parse_guard("0 < v1 && 3*v1 < 1 && 5*v1 > 1"), th);
    REQUIRE(r.sat());
    CHECK(eval_guard(parse_guard("0 < v1 && 3*v1 < 1 && 5*v1 > 1"), r.witness));
}

TEST_CASE("nonlinear conjuncts: sound unsat via the monomial abstraction")
{
    // The controller's overflow guards exclude each other.
    CHECK(is_satisfiable(parse_guard("p = 30 && |p| <= 30 && p = K * (sp - sv) && "
                                     "K * (sp - sv) > 30"),
                         th)
              .unsat());
    CHECK(is_satisfiable(parse_guard("p = -30 && |p| <= 30 && p = K * (sp - sv) && "
                                     "K * (sp - sv) < -30"),
                         th)
              .unsat());
    CHECK(is_satisfiable(parse_guard("p = 30 && p = -30"), th).unsat());
}

TEST_CASE("nonlinear conjuncts: verified witnesses or honest unknown")
{
    SatResult a = is_satisfiable(parse_guard("|v4| <= 30 && v4 = v2 * (v1 - v3)"), th);
    REQUIRE(a.sat());
    CHECK(eval_guard(parse_guard("|v4| <= 30 && v4 = v2 * (v1 - v3)"), a.witness));

    SatResult b = is_satisfiable(parse_guard("v4 = 30 && v2 * (v1 - v3) > 30"), th);
    REQUIRE(b.sat());
    CHECK(eval_guard(parse_guard("v4 = 30 && v2 * (v1 - v3) > 30"), b.witness));

    // Unsatisfiable over the reals but feasible in the abstraction: the
    // solver must not guess, so it reports unknown.
    CHECK(is_satisfiable(parse_guard("v1 * v1 < 0"), th).unknown());
}

TEST_CASE("theory without solver capability")
{
    Theory none = Theory::none();
    CHECK(is_satisfiable(Guard::truth(), none).sat());
    CHECK(is_satisfiable(Guard::falsity(), none).unsat());
    CHECK(is_satisfiable(parse_guard("v1 <= v2"), none).unknown());
}

TEST_CASE("every enumerated word guard is satisfiable, confirmed by the grid")
{
    // Independent oracle: exhaustive search over the integer grid {-2..2}.
    RegisterAutomaton a = gallery::drop_recover();
    std::vector<Rational> grid{-2, -1, 0, 1, 2};
    EnumerationResult e = enumerate_symbolic(a, 3, th);
    REQUIRE(e.words.size() == 7);
    for (const SymbolicWord& w : e.words) {
        Guard g = word_guard(w);
        auto oracle = grid_search(g, grid);
        REQUIRE(oracle.has_value());
        SatResult r = is_satisfiable(g, th);
        REQUIRE(r.sat());
        CHECK(eval_guard(g, r.witness));
    }
}

TEST_CASE("grid oracle agreement on random linear conjunctions")
{
    std::mt19937 rng(77);
    std::vector<Variable> pool{Variable::marker(1), Variable::marker(2),
                               Variable::marker(3)};
    int sat_cases = 0;
    for (int i = 0; i < 300; ++i) {
        std::vector<Guard> parts;
        std::uniform_int_distribution<int> len(1, 4);
        int k = len(rng);
        for (int j = 0; j < k; ++j)
            parts.push_back(Guard::atom(testing::random_atom(rng, pool, false)));
        Guard g = Guard::conj(std::move(parts));
        auto grid_witness = grid_search(g, small_grid());
        SatResult r = is_satisfiable(g, th);
        if (grid_witness) {
            ++sat_cases;
            REQUIRE(r.sat());
            CHECK(eval_guard(g, r.witness));
        }
        if (r.unsat())
            CHECK_FALSE(grid_witness.has_value());
    }
    CHECK(sat_cases > 50);
}

TEST_CASE("sat results always carry a verified witness")
{
    std::mt19937 rng(404);
    std::vector<Variable> pool{Variable::marker(1), Variable::marker(2),
                               Variable::reg("x"), Variable::param()};
    for (int i = 0; i < 300; ++i) {
        Guard g = testing::random_formula(rng, pool, 3, true).to_guard();
        SatResult r = is_satisfiable(g, th);
        if (r.sat())
            CHECK(eval_guard(g, r.witness));
    }
}

TEST_CASE("smtlib export")
{
    std::string script = to_smtlib(parse_guard("v1 <= v2 && !(x + p = 1/2)"));
    CHECK(script.find("(set-logic QF_NRA)") != std::string::npos);
    CHECK(script.find("(declare-const v1 Real)") != std::string::npos);
    CHECK(script.find("(declare-const p Real)") != std::string::npos);
    CHECK(script.find("(declare-const x Real)") != std::string::npos);
    CHECK(script.find("(check-sat)") != std::string::npos);
    CHECK(script.find("(get-model)") != std::string::npos);
    CHECK(script.find("(/ (- 1) 2)") != std::string::npos); // the constant -1/2
}

TEST_CASE("external solver subprocess")
{
    // v1*v1 = 49/9 defeats the built-in heuristics; a stub solver script
    // exercises the subprocess protocol.
    Guard g = parse_guard("v1 * v1 = 49/9");
    REQUIRE(is_satisfiable(g, th).unknown());

    auto write_script = [](const char* path, const char* body) {
        std::ofstream f(path);
        f << "#!/bin/sh\ncat > /dev/null\n" << body;
    };

    write_script("/tmp/ra_stub_sat.sh",
                 "echo sat\necho '(model (define-fun v1 () Real (/ 7 3)))'\n");
    SatResult ext = is_satisfiable(g, Theory::external("sh /tmp/ra_stub_sat.sh"));
    REQUIRE(ext.sat());
    CHECK(eval_guard(g, ext.witness));

    write_script("/tmp/ra_stub_unsat.sh", "echo unsat\n");
    CHECK(is_satisfiable(g, Theory::external("sh /tmp/ra_stub_unsat.sh")).unsat());

    // A sat claim with a bogus model must not be trusted.
    write_script("/tmp/ra_stub_bogus.sh",
                 "echo sat\necho '(model (define-fun v1 () Real 1))'\n");
    CHECK(is_satisfiable(g, Theory::external("sh /tmp/ra_stub_bogus.sh")).unknown());

    write_script("/tmp/ra_stub_garbage.sh", "echo maybe\n");
    CHECK(is_satisfiable(g, Theory::external("sh /tmp/ra_stub_garbage.sh")).unknown());
}
