#include "ra/gallery.hpp"

#include "ra/text.hpp"

namespace ra {
namespace gallery {

namespace {

Transition make(const std::string& src, const std::string& sym, const std::string& guard,
                std::initializer_list<std::pair<const char*, const char*>> assigns,
                const std::string& dst)
{
    Transition t;
    t.source = src;
    t.symbol = sym;
    t.guard = parse_guard(guard);
    for (const auto& [reg, from] : assigns) {
        Variable target = Variable::reg(reg);
        Variable source = std::string(from) == "p" ? Variable::param()
                                                   : Variable::reg(from);
        t.assign.updates.emplace(target, source);
    }
    t.target = dst;
    return t;
}

} // namespace

RegisterAutomaton drop_recover()
{
    return RegisterAutomaton(
        {"a"}, {"q0", "q1", "q2"}, "q0", {Variable::reg("x")},
        {
            make("q0", "a", "true", {{"x", "p"}}, "q1"),
            make("q1", "a", "x <= p", {{"x", "p"}}, "q1"),
            make("q1", "a", "p < x", {{"x", "p"}}, "q2"),
            make("q2", "a", "x <= p", {{"x", "p"}}, "q1"),
        });
}

RegisterAutomaton drop_recover_unset_read()
{
    return RegisterAutomaton(
        {"a"}, {"q0", "q1", "q2"}, "q0", {Variable::reg("x")},
        {
            make("q0", "a", "x <= p", {{"x", "p"}}, "q1"),
            make("q1", "a", "x <= p", {{"x", "p"}}, "q1"),
            make("q1", "a", "p < x", {{"x", "p"}}, "q2"),
            make("q2", "a", "x <= p", {{"x", "p"}}, "q1"),
        });
}

RegisterAutomaton proportional_controller()
{
    return RegisterAutomaton(
        {"setp", "gain", "sens", "cntr", "reset"}, {"q0", "q1", "q2", "q3", "q4"}, "q0",
        {Variable::reg("sp"), Variable::reg("K"), Variable::reg("sv")},
        {
            make("q0", "setp", "true", {{"sp", "p"}}, "q1"),
            make("q1", "gain", "true", {{"K", "p"}, {"sp", "sp"}}, "q2"),
            make("q2", "sens", "true", {{"sv", "p"}, {"sp", "sp"}, {"K", "K"}}, "q3"),
            make("q3", "cntr", "|p| <= 30 && p = K * (sp - sv)",
                 {{"sp", "sp"}, {"K", "K"}}, "q2"),
            make("q3", "cntr", "p = 30 && K * (sp - sv) > 30", {}, "q4"),
            make("q3", "cntr", "p = -30 && K * (sp - sv) < -30", {}, "q4"),
            make("q4", "reset", "true", {}, "q0"),
        });
}

RegisterAutomaton sign_split()
{
    return RegisterAutomaton({"a"}, {"q0", "q1"}, "q0", {},
                             {
                                 make("q0", "a", "p > 0", {}, "q1"),
                                 make("q0", "a", "p <= 0", {}, "q1"),
                             });
}

RegisterAutomaton sign_free()
{
    return RegisterAutomaton({"a"}, {"q0", "q1"}, "q0", {},
                             {
                                 make("q0", "a", "true", {}, "q1"),
                             });
}

RegisterAutomaton zero_route_a()
{
    return RegisterAutomaton(
        {"a", "b", "c"}, {"q0", "q1", "q2", "q3", "q4", "q5", "q6"}, "q0",
        {Variable::reg("x")},
        {
            make("q0", "a", "p < 0", {{"x", "p"}}, "q1"),
            make("q0", "a", "p > 0", {{"x", "p"}}, "q2"),
            make("q0", "a", "p = 0", {{"x", "p"}}, "q2"),
            make("q1", "c", "x + p = 0", {{"x", "p"}}, "q3"),
            make("q2", "a", "x > 0", {}, "q4"),
            make("q2", "a", "x = 0", {}, "q4"),
            make("q3", "a", "x > 0", {}, "q5"),
            make("q4", "b", "true", {}, "q6"),
            make("q5", "c", "true", {}, "q6"),
        });
}

RegisterAutomaton zero_route_b()
{
    return RegisterAutomaton(
        {"a", "b", "c"}, {"q0", "q1", "q2", "q3", "q4", "q5", "q6"}, "q0",
        {Variable::reg("x")},
        {
            make("q0", "a", "p < 0", {{"x", "p"}}, "q1"),
            make("q0", "a", "p > 0", {{"x", "p"}}, "q2"),
            make("q0", "a", "p = 0", {{"x", "p"}}, "q3"),
            make("q1", "c", "x + p = 0", {{"x", "p"}}, "q3"),
            make("q2", "a", "x > 0", {}, "q4"),
            make("q3", "a", "x > 0", {}, "q5"),
            make("q3", "a", "x = 0", {}, "q4"),
            make("q4", "b", "true", {}, "q6"),
            make("q5", "c", "true", {}, "q6"),
        });
}

RegisterAutomaton equality_pattern(int n)
{
    if (n < 1)
        throw AutomatonError("equality_pattern needs n >= 1");
    std::vector<Location> locations;
    std::vector<Variable> registers;
    std::vector<Transition> transitions;
    for (int i = 0; i <= 2 * n; ++i)
        locations.push_back("q" + std::to_string(i));
    locations.push_back("ok");
    for (int i = 1; i <= 2 * n; ++i)
        registers.push_back(Variable::reg("x" + std::to_string(i)));

    for (int i = 1; i <= 2 * n; ++i) {
        Transition t;
        t.source = "q" + std::to_string(i - 1);
        t.symbol = "a";
        t.guard = Guard::truth();
        t.target = "q" + std::to_string(i);
        t.assign.updates.emplace(Variable::reg("x" + std::to_string(i)),
                                 Variable::param());
        for (int j = 1; j < i; ++j) {
            Variable x = Variable::reg("x" + std::to_string(j));
            t.assign.updates.emplace(x, x);
        }
        transitions.push_back(std::move(t));
    }

    auto regs_equal = [](int i, int j) {
        return Guard::cmp(Cmp::Eq, poly_var(Variable::reg("x" + std::to_string(i))),
                          poly_var(Variable::reg("x" + std::to_string(j))));
    };
    std::vector<Guard> conjuncts;
    for (int i = 1; i <= n - 1; ++i) {
        Guard front = regs_equal(i, i + 1);
        Guard back = regs_equal(n + i, n + i + 1);
        conjuncts.push_back(Guard::disj(Guard::conj(front, back),
                                        Guard::conj(Guard::negate(front),
                                                    Guard::negate(back))));
    }
    Transition last;
    last.source = "q" + std::to_string(2 * n);
    last.symbol = "b";
    last.guard = Guard::conj(std::move(conjuncts));
    last.target = "ok";
    transitions.push_back(std::move(last));

    return RegisterAutomaton({"a", "b"}, std::move(locations), "q0", std::move(registers),
                             std::move(transitions));
}

} // namespace gallery
} // namespace ra
