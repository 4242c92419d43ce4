#include <doctest.h>

#include "ra/gallery.hpp"
#include "ra/text.hpp"

#include "support/generators.hpp"

#include <random>

using namespace ra;

namespace {

const Theory th = Theory::linear();

/// q0 -a[p=1],x:=p-> q1 -a[x=2]-> q2: every step alpha-matches, but the
/// accumulated guard v1=1 ∧ v1=2 is unsatisfiable.
RegisterAutomaton constant_pin()
{
    Variable x = Variable::reg("x");
    Transition t1{"q0", "a", parse_guard("p = 1"), {}, "q1"};
    t1.assign.updates[x] = Variable::param();
    Transition t2{"q1", "a", parse_guard("x = 2"), {}, "q2"};
    return RegisterAutomaton({"a"}, {"q0", "q1", "q2"}, "q0", {x}, {t1, t2});
}

std::vector<SymbolicWord> words_of(const std::vector<std::string>& texts)
{
    std::vector<SymbolicWord> out;
    for (const std::string& t : texts)
        out.push_back(parse_symbolic_word(t));
    std::sort(out.begin(), out.end(), word_less);
    return out;
}

} // namespace

TEST_CASE("symbolic_run accepts the rise-drop-recover trace")
{
    RegisterAutomaton a = gallery::drop_recover();
    SymbolicMatch m = symbolic_run(
        a, parse_symbolic_word("a [true] ; a [v1 <= v2] ; a [v3 < v2] ; a [v3 <= v4]"),
        th);
    REQUIRE(m.accepted());
    CHECK(m.run.final_location() == "q1");
    CHECK(m.run.final_zeta() ==
          Renaming{{Variable::reg("x"), Variable::marker(4)}});
    CHECK(m.run.locations ==
          std::vector<Location>{"q0", "q1", "q1", "q2", "q1"});

    SymbolicMatch empty = symbolic_run(a, {}, th);
    CHECK(empty.accepted());
    CHECK(empty.run.length() == 0);
}

TEST_CASE("symbolic_run rejections")
{
    RegisterAutomaton a = gallery::drop_recover();
    SymbolicMatch none = symbolic_run(a, parse_symbolic_word("a [v1 = 1]"), th);
    CHECK(none.status == SymbolicMatch::NoTransition);
    CHECK(none.failed_index == 1);

    SymbolicMatch wrong_step =
        symbolic_run(a, parse_symbolic_word("a [true] ; a [v2 <= v1]"), th);
    CHECK(wrong_step.status == SymbolicMatch::NoTransition);
    CHECK(wrong_step.failed_index == 2);

    // Alpha-matching transitions with an unsatisfiable accumulated guard.
    RegisterAutomaton pin = constant_pin();
    SymbolicMatch unsat =
        symbolic_run(pin, parse_symbolic_word("a [v1 = 1] ; a [v1 = 2]"), th);
    CHECK(unsat.status == SymbolicMatch::Infeasible);
    CHECK(unsat.failed_index == 2);
}

TEST_CASE("strace inverts the run structure")
{
    RegisterAutomaton a = gallery::drop_recover();
    SymbolicWord w =
        parse_symbolic_word("a [true] ; a [v1 <= v2] ; a [v3 < v2] ; a [v3 <= v4]");
    SymbolicMatch m = symbolic_run(a, w, th);
    REQUIRE(m.accepted());
    CHECK(strace(m.run) == w);
    CHECK(strace(empty_symbolic_run(a)).empty());
}

TEST_CASE("controller trace carries the actuator guard")
{
    RegisterAutomaton pc = gallery::proportional_controller();
    RunResult r = run_word(
        pc, parse_data_word(
                "setp(10) gain(0.5) sens(20) cntr(-5) sens(80) cntr(-30) reset(0)"));
    REQUIRE(r.accepted());
    auto [delta, xi] = abstract_run(pc, r.run);
    SymbolicWord w = strace(delta);
    REQUIRE(w.size() == 7);
    CHECK(alpha_equal(w[3].guard, parse_guard("|v4| <= 30 && v4 = v2 * (v1 - v3)")));
    CHECK(alpha_equal(w[5].guard,
                      parse_guard("v6 = -30 && v2 * (v1 - v5) < -30")));
}

TEST_CASE("enumerate_symbolic matches hand expansion")
{
    RegisterAutomaton a = gallery::drop_recover();
    EnumerationResult e = enumerate_symbolic(a, 2, th);
    CHECK(e.undetermined.empty());
    CHECK(e.words == words_of({"epsilon", "a [true]", "a [true] ; a [v1 <= v2]",
                               "a [true] ; a [v2 < v1]"}));

    EnumerationResult left = enumerate_symbolic(gallery::sign_split(), 1, th);
    CHECK(left.words == words_of({"epsilon", "a [v1 > 0]", "a [v1 <= 0]"}));
    EnumerationResult right = enumerate_symbolic(gallery::sign_free(), 1, th);
    CHECK(right.words == words_of({"epsilon", "a [true]"}));

    EnumerationResult zero = enumerate_symbolic(a, 0, th);
    CHECK(zero.words == words_of({"epsilon"}));
}

TEST_CASE("enumeration prunes unsatisfiable branches")
{
    EnumerationResult e = enumerate_symbolic(constant_pin(), 2, th);
    CHECK(e.words == words_of({"epsilon", "a [v1 = 1]"}));
    CHECK(e.undetermined.empty());
}

TEST_CASE("enumeration invariants on the bundled automata")
{
    std::vector<RegisterAutomaton> models;
    models.push_back(gallery::drop_recover());
    models.push_back(gallery::proportional_controller());
    models.push_back(gallery::sign_split());
    models.push_back(gallery::sign_free());
    models.push_back(gallery::zero_route_a());
    models.push_back(gallery::zero_route_b());

    for (const RegisterAutomaton& a : models) {
        for (int depth = 0; depth <= 4; ++depth) {
            auto runs = enumerate_symbolic_runs(a, depth, th);
            std::vector<SymbolicWord> traces;
            for (const EnumeratedRun& er : runs) {
                const SymbolicRun& run = er.run;
                // Renaming ranges stay within the markers seen so far and
                // every renaming is injective.
                for (size_t i = 0; i < run.zetas.size(); ++i) {
                    std::set<Variable> seen;
                    for (const auto& [reg, marker] : run.zetas[i]) {
                        CHECK(marker.is_marker());
                        CHECK(marker.marker_index() <= static_cast<int>(i));
                        CHECK(seen.insert(marker).second);
                    }
                }
                for (size_t i = 0; i < run.steps.size(); ++i) {
                    std::set<Variable> seen;
                    for (const auto& [from, to] : run.steps[i].iota) {
                        CHECK(to.marker_index() <= static_cast<int>(i) + 1);
                        CHECK(seen.insert(to).second);
                    }
                }
                traces.push_back(strace(run));
            }
            // No two distinct runs share a symbolic trace.
            std::sort(traces.begin(), traces.end(), word_less);
            CHECK(std::adjacent_find(traces.begin(), traces.end()) == traces.end());

            // The enumerated language is nonempty, prefix closed, feasible.
            EnumerationResult e = enumerate_symbolic(a, depth, th);
            CHECK(e.undetermined.empty());
            REQUIRE(!e.words.empty());
            CHECK(e.words.front().empty());
            for (const SymbolicWord& w : e.words) {
                CHECK(is_feasible(w, th).kind == FeasibilityResult::Feasible);
                if (!w.empty()) {
                    SymbolicWord prefix(w.begin(), w.end() - 1);
                    CHECK(std::binary_search(e.words.begin(), e.words.end(), prefix,
                                             word_less));
                }
            }
        }
    }
}

TEST_CASE("is_feasible")
{
    CHECK(is_feasible(parse_symbolic_word(
                          "a [true] ; a [v1 <= v2] ; a [v3 < v2] ; a [v3 <= v4]"),
                      th)
              .kind == FeasibilityResult::Feasible);
    // Out-of-scope marker at position 1.
    CHECK(is_feasible(parse_symbolic_word("a [v1 <= v2]"), th).kind ==
          FeasibilityResult::Infeasible);
    // Unsatisfiable total guard.
    CHECK(is_feasible(parse_symbolic_word("a [true] ; a [v1 < v2 && v2 < v1]"), th)
              .kind == FeasibilityResult::Infeasible);
    CHECK(is_feasible({}, th).kind == FeasibilityResult::Feasible);
}

TEST_CASE("concretize the worked example")
{
    RegisterAutomaton a = gallery::drop_recover();
    SymbolicMatch m = symbolic_run(
        a, parse_symbolic_word("a [true] ; a [v1 <= v2] ; a [v3 < v2] ; a [v3 <= v4]"),
        th);
    REQUIRE(m.accepted());

    Valuation xi{{Variable::marker(1), 1},
                 {Variable::marker(2), 4},
                 {Variable::marker(3), 0},
                 {Variable::marker(4), 7}};
    Run gamma = concretize(a, m.run, xi);
    CHECK(gamma.word() == parse_data_word("a(1) a(4) a(0) a(7)"));
    CHECK(gamma.configurations() ==
          run_word(a, parse_data_word("a(1) a(4) a(0) a(7)")).run.configurations());

    Valuation xi2{{Variable::marker(1), 2},
                  {Variable::marker(2), 5},
                  {Variable::marker(3), 1},
                  {Variable::marker(4), 9}};
    Run gamma2 = concretize(a, m.run, xi2);
    CHECK(gamma2.final() == Configuration{"q1", {{Variable::reg("x"), 9}}});
    CHECK(run_word(a, gamma2.word()).accepted());

    CHECK(concretize(a, empty_symbolic_run(a), {}).length() == 0);

    Valuation bad{{Variable::marker(1), 1},
                  {Variable::marker(2), 1},
                  {Variable::marker(3), 5},
                  {Variable::marker(4), 0}};
    CHECK_THROWS_AS(concretize(a, m.run, bad), WitnessRejectedError);
    CHECK_THROWS_AS(concretize(a, m.run, Valuation{{Variable::marker(1), 1}}),
                    WitnessRejectedError);
}

TEST_CASE("abstract_run inverts concretize")
{
    RegisterAutomaton a = gallery::drop_recover();
    RunResult r = run_word(a, parse_data_word("a(1) a(4) a(0) a(7)"));
    auto [delta, xi] = abstract_run(a, r.run);
    CHECK(strace(delta) ==
          parse_symbolic_word("a [true] ; a [v1 <= v2] ; a [v3 < v2] ; a [v3 <= v4]"));
    CHECK(xi == Valuation{{Variable::marker(1), 1},
                          {Variable::marker(2), 4},
                          {Variable::marker(3), 0},
                          {Variable::marker(4), 7}});
    CHECK(abstract_run(a, Run{initial_configuration(a), {}}).first.length() == 0);
}

TEST_CASE("concretize(abstract_run) round trip on random accepted runs")
{
    std::mt19937 rng(6021);
    std::vector<RegisterAutomaton> models;
    models.push_back(gallery::drop_recover());
    models.push_back(gallery::zero_route_a());
    models.push_back(gallery::zero_route_b());

    int total = 0;
    for (const RegisterAutomaton& a : models) {
        for (int i = 0; i < 200; ++i) {
            std::uniform_int_distribution<int> len(0, a.alphabet().size() > 1 ? 4 : 6);
            auto gamma = testing::random_accepted_run(a, rng, len(rng));
            if (!gamma)
                continue;
            auto [delta, xi] = abstract_run(a, *gamma);
            Run back = concretize(a, delta, xi);
            CHECK(back.start == gamma->start);
            REQUIRE(back.length() == gamma->length());
            for (size_t k = 0; k < back.length(); ++k) {
                CHECK(back.steps[k].input == gamma->steps[k].input);
                CHECK(back.steps[k].transition == gamma->steps[k].transition);
                CHECK(back.steps[k].after == gamma->steps[k].after);
            }
            ++total;
        }
    }
    CHECK(total >= 500);
}
