#include <doctest.h>

#include "ra/gallery.hpp"
#include "ra/text.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

using namespace ra;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult cli(const std::string& args)
{
    std::string command = std::string(RA_CLI_PATH) + " " + args + " 2>&1";
    CliResult result;
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe);
    char buffer[4096];
    size_t got;
    while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0)
        result.output.append(buffer, got);
    int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string data_file(const std::string& name)
{
    return std::string(RA_DATA_DIR) + "/" + name;
}

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("exit codes form a stable contract")
{
    CHECK(cli("check " + data_file("drop_recover.ra")).exit_code == 0);
    CHECK(cli("check " + data_file("drop_recover_unset_read.ra")).exit_code == 1);
    CHECK(cli("run " + data_file("drop_recover.ra") + " 'a(5) a(3) a(2)'").exit_code == 1);
    CHECK(cli("run /nonexistent.ra 'a(1)'").exit_code == 3);
    CHECK(cli("run " + data_file("drop_recover.ra") + " 'a(1'").exit_code == 3);
    CHECK(cli("definitely-not-a-command").exit_code == 3);
    CHECK(cli("--theory bogus check " + data_file("drop_recover.ra")).exit_code == 3);
    // Solver-free theory cannot decide branch satisfiability once guards
    // carry atoms: unknown.
    CHECK(cli("--theory none enumerate " + data_file("drop_recover.ra") + " --depth 1")
              .exit_code == 0); // only trivially-true guards at depth 1
    CHECK(cli("--theory none enumerate " + data_file("drop_recover.ra") + " --depth 2")
              .exit_code == 2);
}

TEST_CASE("check reports determinism violations on overlapping guards")
{
    namespace fs = std::filesystem;
    fs::path file = fs::temp_directory_path() / "ra_cli_overlap.ra";
    {
        std::ofstream out(file);
        out << "alphabet: a\nregisters:\ninitial: q0\n"
               "q0 --a[ true ]{}--> q1\n"
               "q0 --a[ true ]{}--> q2\n";
    }
    CliResult r = cli("check " + file.string());
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "determinism violation"));
    fs::remove(file);
}

TEST_CASE("pipeline at depth 0 degenerates to the single-location automaton")
{
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ra_cli_pipeline_depth0";
    fs::remove_all(dir);
    CliResult r = cli("pipeline " + data_file("drop_recover.ra") + " --depth 0 --out " +
                      dir.string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "round trip at depth 0: equal"));
    RegisterAutomaton synthesized = load_automaton((dir / "synthesized.ra").string());
    CHECK(synthesized.locations().size() == 1);
    CHECK(synthesized.transitions().empty());
    fs::remove_all(dir);
}

TEST_CASE("run rejects with the stuck index")
{
    CliResult r = cli("run " + data_file("drop_recover.ra") + " 'a(5) a(3) a(2)'");
    CHECK(contains(r.output, "rejected at index 3"));
    CHECK(contains(r.output, "(q2, {x=3})"));
}

TEST_CASE("enumerate prints the sorted bounded language")
{
    CliResult r = cli("enumerate " + data_file("drop_recover.ra") + " --depth 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "epsilon\n"
                      "a [true]\n"
                      "a [true] ; a [v2 < v1]\n"
                      "a [true] ; a [v1 <= v2]\n");
}

TEST_CASE("pipeline artifacts re-parse to identical canonical structures")
{
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ra_cli_pipeline_test";
    fs::remove_all(dir);

    CliResult r = cli("pipeline " + data_file("zero_route_a.ra") + " --depth 4 --out " +
                      dir.string());
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.output, "violations: 0"));
    CHECK(contains(r.output, "round trip at depth 4: equal"));

    Theory th = Theory::linear();
    LanguageSample sample = load_sample((dir / "sample.txt").string(), th);
    RelationPresentation pres =
        load_presentation((dir / "presentation.txt").string(), sample);
    CHECK(print_sample(sample) + print_presentation(pres, sample) ==
          [&] {
              std::ifstream s(dir / "sample.txt"), p(dir / "presentation.txt");
              std::ostringstream all;
              all << s.rdbuf() << p.rdbuf();
              return all.str();
          }());

    RegisterAutomaton synthesized = load_automaton((dir / "synthesized.ra").string());
    CHECK(print_automaton(parse_automaton_text(print_automaton(synthesized))) ==
          print_automaton(synthesized));

    // The written artifacts drive check-regular and synthesize directly.
    CHECK(cli("check-regular " + (dir / "sample.txt").string() + " " +
              (dir / "presentation.txt").string())
              .exit_code == 0);
    CliResult synth = cli("synthesize " + (dir / "sample.txt").string() + " " +
                          (dir / "presentation.txt").string());
    CHECK(synth.exit_code == 0);
    CHECK(contains(synth.output, "initial: q0"));

    fs::remove_all(dir);
}

TEST_CASE("equiv counterexamples replay through the CLI")
{
    CliResult sym = cli("equiv " + data_file("sign_split.ra") + " " +
                        data_file("sign_free.ra") + " --mode symbolic --depth 1");
    REQUIRE(sym.exit_code == 1);
    REQUIRE(contains(sym.output, "counterexample: "));
    std::string word = sym.output.substr(sym.output.find("counterexample: ") + 16);
    word = word.substr(0, word.find('\n'));

    CHECK(cli("symbolic " + data_file("sign_split.ra") + " '" + word + "'").exit_code ==
          0);
    CHECK(cli("symbolic " + data_file("sign_free.ra") + " '" + word + "'").exit_code ==
          1);
}

TEST_CASE("export-smt and gen-an emit usable artifacts")
{
    CliResult smt = cli("export-smt 'v1 <= v2 && v3 < v2'");
    CHECK(smt.exit_code == 0);
    CHECK(contains(smt.output, "(set-logic QF_NRA)"));
    CHECK(contains(smt.output, "(check-sat)"));

    CliResult an = cli("gen-an --n 3");
    CHECK(an.exit_code == 0);
    RegisterAutomaton parsed = parse_automaton_text(an.output);
    CHECK(print_automaton(parsed) == print_automaton(gallery::equality_pattern(3)));
}
