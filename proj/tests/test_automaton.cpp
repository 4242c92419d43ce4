#include <doctest.h>

#include "ra/gallery.hpp"
#include "ra/text.hpp"

#include "support/generators.hpp"

#include <random>

using namespace ra;

namespace {

const Theory th = Theory::linear();

RegisterAutomaton two_true_guards()
{
    Transition t1{"q0", "a", Guard::truth(), {}, "q1"};
    Transition t2{"q0", "a", Guard::truth(), {}, "q2"};
    return RegisterAutomaton({"a"}, {"q0", "q1", "q2"}, "q0", {}, {t1, t2});
}

} // namespace

TEST_CASE("construction validates structure")
{
    Transition t{"q0", "a", Guard::truth(), {}, "q1"};
    CHECK_THROWS_AS(RegisterAutomaton({"a"}, {"q0"}, "q0", {}, {t}), AutomatonError);
    CHECK_THROWS_AS(RegisterAutomaton({"b"}, {"q0", "q1"}, "q0", {}, {t}), AutomatonError);
    CHECK_THROWS_AS(RegisterAutomaton({"a"}, {"q0", "q1"}, "qX", {}, {t}), AutomatonError);

    Transition guarded{"q0", "a", parse_guard("y <= p"), {}, "q1"};
    CHECK_THROWS_AS(RegisterAutomaton({"a"}, {"q0", "q1"}, "q0",
                                      {Variable::reg("x")}, {guarded}),
                    AutomatonError);

    Transition clash{"q0", "a", Guard::truth(), {}, "q1"};
    clash.assign.updates[Variable::reg("x")] = Variable::param();
    clash.assign.updates[Variable::reg("y")] = Variable::param();
    CHECK_THROWS_AS(RegisterAutomaton({"a"}, {"q0", "q1"}, "q0",
                                      {Variable::reg("x"), Variable::reg("y")}, {clash}),
                    AutomatonError);

    CHECK_THROWS_AS(RegisterAutomaton({"a"}, {"q0"}, "q0", {Variable::reg("v7")}, {}),
                    AutomatonError);
    CHECK_THROWS_AS(RegisterAutomaton({"a"}, {"q0"}, "q0", {Variable::reg("p")}, {}),
                    AutomatonError);
}

TEST_CASE("validate: determinism")
{
    CHECK(validate(gallery::drop_recover(), th).ok());
    CHECK(validate(gallery::sign_split(), th).ok());
    CHECK(validate(gallery::zero_route_a(), th).ok());
    CHECK(validate(gallery::zero_route_b(), th).ok());

    ValidationReport pc = validate(gallery::proportional_controller(), th);
    CHECK(pc.ok());
    CHECK(pc.unknown_pairs.empty()); // the nonlinear overlaps resolve exactly

    ValidationReport bad = validate(two_true_guards(), th);
    REQUIRE(bad.determinism.size() == 1);
    CHECK(eval_guard(Guard::truth(), bad.determinism[0].witness));
}

TEST_CASE("step")
{
    RegisterAutomaton a = gallery::drop_recover();
    Variable x = Variable::reg("x");

    auto first = step(a, initial_configuration(a), DataSymbol{"a", 1});
    REQUIRE(first);
    CHECK(first->first == Configuration{"q1", {{x, 1}}});

    auto drop = step(a, Configuration{"q1", {{x, 4}}}, DataSymbol{"a", 0});
    REQUIRE(drop);
    CHECK(drop->first == Configuration{"q2", {{x, 0}}});
    CHECK(a.transitions()[drop->second].target == "q2");

    // No enabled transition.
    CHECK_FALSE(step(a, Configuration{"q2", {{x, 3}}}, DataSymbol{"a", 2}));

    // Reading an unset register is a runtime well-formedness failure.
    RegisterAutomaton bad = gallery::drop_recover_unset_read();
    CHECK_THROWS_AS(step(bad, initial_configuration(bad), DataSymbol{"a", 1}),
                    UndefinedVariableError);

    // A non-deterministic automaton trips the uniqueness check in step.
    CHECK_THROWS_AS(step(two_true_guards(), initial_configuration(two_true_guards()),
                         DataSymbol{"a", 0}),
                    AutomatonError);
}

TEST_CASE("run_word on the rise-drop-recover word")
{
    RegisterAutomaton a = gallery::drop_recover();
    RunResult r = run_word(a, parse_data_word("a(1) a(4) a(0) a(7)"));
    REQUIRE(r.accepted());
    Variable x = Variable::reg("x");
    std::vector<Configuration> expected{
        {"q0", {}}, {"q1", {{x, 1}}}, {"q1", {{x, 4}}}, {"q2", {{x, 0}}}, {"q1", {{x, 7}}}};
    CHECK(r.run.configurations() == expected);
    CHECK(r.run.word() == parse_data_word("a(1) a(4) a(0) a(7)"));

    CHECK(run_word(a, {}).accepted());
    CHECK(run_word(a, {}).run.length() == 0);
}

TEST_CASE("run_word rejection index and prefix closedness")
{
    RegisterAutomaton a = gallery::drop_recover();
    RunResult r = run_word(a, parse_data_word("a(5) a(3) a(2)"));
    REQUIRE_FALSE(r.accepted());
    CHECK(*r.rejected_at == 2); // two consecutive strict drops
    CHECK(r.run.length() == 2);

    std::mt19937 rng(5);
    for (int i = 0; i < 50; ++i) {
        auto run = testing::random_accepted_run(a, rng, 6);
        REQUIRE(run);
        DataWord w = run->word();
        CHECK(run->length() == w.size());
        for (const Configuration& c : run->configurations())
            for (const auto& [reg, value] : c.registers)
                CHECK(std::find(a.registers().begin(), a.registers().end(), reg) !=
                      a.registers().end());
        for (size_t k = 0; k <= w.size(); ++k) {
            DataWord prefix(w.begin(), w.begin() + k);
            CHECK(run_word(a, prefix).accepted());
        }
    }
}

TEST_CASE("controller accepts its demo word")
{
    RegisterAutomaton pc = gallery::proportional_controller();
    RunResult r =
        run_word(pc, parse_data_word("setp(10) gain(0.5) sens(20) cntr(-5) sens(80) "
                                     "cntr(-30) reset(0)"));
    REQUIRE(r.accepted());
    CHECK(r.run.final().location == "q0");

    // The wrong overflow direction is rejected.
    CHECK_FALSE(run_word(pc, parse_data_word("setp(10) gain(0.5) sens(80) cntr(30)"))
                    .accepted());
}

TEST_CASE("syntactic well-formedness dataflow")
{
    SyntacticWellFormedness wf = check_well_formed_syntactic(gallery::drop_recover());
    CHECK(wf.well_formed);
    Variable x = Variable::reg("x");
    CHECK(wf.defined.at("q0") == std::set<Variable>{});
    CHECK(wf.defined.at("q1") == std::set<Variable>{x});
    CHECK(wf.defined.at("q2") == std::set<Variable>{x});

    RegisterAutomaton unset = gallery::drop_recover_unset_read();
    SyntacticWellFormedness bad = check_well_formed_syntactic(unset);
    CHECK_FALSE(bad.well_formed);
    REQUIRE(bad.offending.size() == 1);
    CHECK(unset.transitions()[bad.offending[0]].source == "q0");

    SyntacticWellFormedness pc =
        check_well_formed_syntactic(gallery::proportional_controller());
    CHECK(pc.well_formed);
    Variable sp = Variable::reg("sp"), K = Variable::reg("K"), sv = Variable::reg("sv");
    CHECK(pc.defined.at("q1") == std::set<Variable>{sp});
    CHECK(pc.defined.at("q2") == std::set<Variable>{K, sp});
    CHECK(pc.defined.at("q3") == std::set<Variable>{K, sp, sv});
    CHECK(pc.defined.at("q4") == std::set<Variable>{});
}

TEST_CASE("unreachable locations are skipped and reported")
{
    Transition t0{"q0", "a", Guard::truth(), {}, "q1"};
    Transition island{"q5", "a", parse_guard("x <= p"), {}, "q6"};
    RegisterAutomaton a({"a"}, {"q0", "q1", "q5", "q6"}, "q0", {Variable::reg("x")},
                        {t0, island});
    SyntacticWellFormedness wf = check_well_formed_syntactic(a);
    CHECK(wf.well_formed); // the offending guard sits on an unreachable location
    CHECK(wf.unreachable == std::vector<Location>{"q5", "q6"});
}

TEST_CASE("bounded well-formedness")
{
    CHECK(check_well_formed_bounded(gallery::drop_recover(), 4, th).ok());
    CHECK(check_well_formed_bounded(gallery::sign_split(), 2, th).ok());

    RegisterAutomaton unset = gallery::drop_recover_unset_read();
    BoundedWellFormedness bad = check_well_formed_bounded(unset, 1, th);
    REQUIRE(bad.verdict == BoundedWellFormedness::Counterexample);
    CHECK(bad.witness_run.length() == 0); // the empty run already fails
    CHECK(unset.transitions()[*bad.offending].source == "q0");
}

TEST_CASE("equality-pattern family against a brute-force acceptor")
{
    for (int n = 1; n <= 4; ++n) {
        RegisterAutomaton an = gallery::equality_pattern(n);
        CHECK(validate(an, th).ok());
        CHECK(check_well_formed_syntactic(an).well_formed);

        // Oracle over the full data alphabet {0,1,2} at word length 2n+1.
        int len = 2 * n + 1;
        std::vector<int> digits(len, 0);
        for (;;) {
            DataWord w;
            for (int i = 0; i < 2 * n; ++i)
                w.push_back(DataSymbol{"a", digits[i]});
            w.push_back(DataSymbol{"b", digits[len - 1]});
            bool expected = true;
            for (int i = 1; i <= n - 1; ++i) {
                bool front = digits[i - 1] == digits[i];
                bool back = digits[n + i - 1] == digits[n + i];
                expected = expected && (front == back);
            }
            CHECK(run_word(an, w).accepted() == expected);
            int k = 0;
            while (k < len && ++digits[k] == 3) {
                digits[k] = 0;
                ++k;
            }
            if (k == len)
                break;
        }

        // Wrong shapes reject.
        CHECK_FALSE(run_word(an, parse_data_word("b(0)")).accepted());
        DataWord all_a(2 * n + 1, DataSymbol{"a", 1});
        CHECK_FALSE(run_word(an, all_a).accepted());
    }
}
