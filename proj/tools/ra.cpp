#include "ra/equiv.hpp"
#include "ra/errors.hpp"
#include "ra/gallery.hpp"
#include "ra/nerode.hpp"
#include "ra/smtlib.hpp"
#include "ra/text.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace ra;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;

Theory make_theory(const std::string& choice)
{
    if (choice == "linear")
        return Theory::linear();
    if (choice == "none")
        return Theory::none();
    if (choice.rfind("external:", 0) == 0)
        return Theory::external(choice.substr(9));
    throw ParseError("unknown theory '" + choice + "' (use linear, none or external:CMD)");
}

std::string join_args(const std::vector<std::string>& args)
{
    std::string out;
    for (const std::string& a : args) {
        if (!out.empty())
            out += " ";
        out += a;
    }
    return out;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write " + path);
    out << content;
}

void describe_transition(std::ostream& os, const RegisterAutomaton& a, size_t idx)
{
    const Transition& t = a.transitions()[idx];
    os << t.source << " --" << t.symbol << "[ " << print_guard(t.guard) << " ]--> "
       << t.target;
}

int cmd_check(const std::string& file, std::optional<int> bound, const Theory& th)
{
    RegisterAutomaton a = load_automaton(file);
    bool violation = false, unknown = false;

    ValidationReport v = validate(a, th);
    for (const auto& clash : v.determinism) {
        std::cout << "determinism violation: ";
        describe_transition(std::cout, a, clash.first);
        std::cout << "  overlaps  ";
        describe_transition(std::cout, a, clash.second);
        std::cout << "  witness " << print_valuation(clash.witness) << "\n";
        violation = true;
    }
    for (size_t idx : v.non_injective) {
        std::cout << "non-injective assignment: ";
        describe_transition(std::cout, a, idx);
        std::cout << "\n";
        violation = true;
    }
    for (const auto& [i, j] : v.unknown_pairs) {
        std::cout << "undecided guard overlap: ";
        describe_transition(std::cout, a, i);
        std::cout << "  vs  ";
        describe_transition(std::cout, a, j);
        std::cout << "\n";
        unknown = true;
    }

    SyntacticWellFormedness wf = check_well_formed_syntactic(a);
    for (const Location& q : wf.unreachable)
        std::cout << "note: location " << q << " is unreachable\n";
    if (!wf.well_formed) {
        for (size_t idx : wf.offending) {
            std::cout << "well-formedness: guard reads an undefined register: ";
            describe_transition(std::cout, a, idx);
            std::cout << "\n";
        }
        violation = true;
    }

    if (bound) {
        BoundedWellFormedness bwf = check_well_formed_bounded(a, *bound, th);
        if (bwf.verdict == BoundedWellFormedness::Counterexample) {
            std::cout << "well-formedness counterexample at depth " << *bound
                      << ": after " << print_symbolic_word(strace(bwf.witness_run))
                      << " the transition ";
            describe_transition(std::cout, a, *bwf.offending);
            std::cout << " reads an unset register\n";
            violation = true;
        } else if (bwf.verdict == BoundedWellFormedness::Undecided) {
            std::cout << "well-formedness undecided at depth " << *bound << "\n";
            unknown = true;
        }
    }

    if (violation)
        return kExitViolation;
    if (unknown)
        return kExitUnknown;
    std::cout << "ok\n";
    return kExitOk;
}

int cmd_run(const std::string& file, const std::string& word_text)
{
    RegisterAutomaton a = load_automaton(file);
    DataWord w = parse_data_word(word_text);
    RunResult r = run_word(a, w);
    for (const Configuration& c : r.run.configurations())
        std::cout << print_configuration(c) << "\n";
    if (!r.accepted()) {
        std::cout << "rejected at index " << *r.rejected_at + 1 << "\n";
        return kExitViolation;
    }
    std::cout << "accepted\n";
    return kExitOk;
}

int cmd_symbolic(const std::string& file, const std::string& word_text, const Theory& th)
{
    RegisterAutomaton a = load_automaton(file);
    SymbolicWord w = parse_symbolic_word(word_text);
    SymbolicMatch m = symbolic_run(a, w, th);
    for (size_t i = 0; i < m.run.locations.size(); ++i) {
        std::cout << "(" << m.run.locations[i] << ", "
                  << print_renaming(m.run.zetas[i]) << ")\n";
    }
    switch (m.status) {
    case SymbolicMatch::Accepted:
        std::cout << "accepted\n";
        return kExitOk;
    case SymbolicMatch::NoTransition:
        std::cout << "rejected at index " << m.failed_index
                  << ": no transition matches the guard\n";
        return kExitViolation;
    case SymbolicMatch::Infeasible:
        std::cout << "rejected at index " << m.failed_index
                  << ": accumulated guard is unsatisfiable\n";
        return kExitViolation;
    case SymbolicMatch::UndecidedSat:
        std::cout << "undecided at index " << m.failed_index
                  << ": accumulated guard satisfiability unknown\n";
        return kExitUnknown;
    }
    return kExitUsage;
}

int cmd_enumerate(const std::string& file, int depth, const Theory& th)
{
    RegisterAutomaton a = load_automaton(file);
    EnumerationResult e = enumerate_symbolic(a, depth, th);
    for (const SymbolicWord& w : e.words)
        std::cout << print_symbolic_word(w) << "\n";
    if (!e.undetermined.empty()) {
        std::cout << "# undetermined:\n";
        for (const SymbolicWord& w : e.undetermined)
            std::cout << print_symbolic_word(w) << "\n";
        return kExitUnknown;
    }
    return kExitOk;
}

int cmd_extract(const std::string& file, int depth, const std::string& out_dir,
                const Theory& th)
{
    RegisterAutomaton a = load_automaton(file);
    ExtractionResult ex = extract_relations(a, depth, th);
    std::string sample = print_sample(ex.sample);
    std::string pres = print_presentation(ex.presentation, ex.sample);
    if (out_dir.empty()) {
        std::cout << sample << pres;
    } else {
        std::filesystem::create_directories(out_dir);
        write_file(out_dir + "/sample.txt", sample);
        write_file(out_dir + "/presentation.txt", pres);
        std::cout << "wrote " << out_dir << "/sample.txt and " << out_dir
                  << "/presentation.txt\n";
    }
    if (!ex.undetermined.empty()) {
        std::cout << "# undetermined words excluded: " << ex.undetermined.size() << "\n";
        return kExitUnknown;
    }
    return kExitOk;
}

void print_report(const ConditionReport& report)
{
    for (const ConditionViolation& v : report.violations) {
        std::cout << "condition " << v.condition << " violated";
        if (!v.words.empty()) {
            std::cout << " (words";
            for (size_t i : v.words)
                std::cout << " " << i;
            std::cout << ")";
        }
        std::cout << ": " << v.detail;
        if (v.extension)
            std::cout << "  missing: " << print_symbolic_word(*v.extension);
        std::cout << "\n";
    }
    std::cout << "violations: " << report.violations.size()
              << ", boundary skips: " << report.boundary_skips
              << ", unknowns: " << report.unknowns << "\n";
}

int cmd_check_regular(const std::string& sample_file, const std::string& pres_file,
                      const Theory& th)
{
    LanguageSample sample = load_sample(sample_file, th);
    RelationPresentation pres = load_presentation(pres_file, sample);
    ConditionReport report = check_conditions(sample, pres, th);
    print_report(report);
    if (!report.violations.empty())
        return kExitViolation;
    if (report.unknowns > 0)
        return kExitUnknown;
    return kExitOk;
}

int cmd_synthesize(const std::string& sample_file, const std::string& pres_file,
                   const std::string& out_file, const Theory& th)
{
    LanguageSample sample = load_sample(sample_file, th);
    RelationPresentation pres = load_presentation(pres_file, sample);
    ConditionReport report = check_conditions(sample, pres, th);
    if (!report.violations.empty()) {
        print_report(report);
        return kExitViolation;
    }
    RegisterAutomaton a = synthesize(sample, pres, th);
    std::string text = print_automaton(a);
    if (out_file.empty())
        std::cout << text;
    else {
        write_file(out_file, text);
        std::cout << "wrote " << out_file << "\n";
    }
    return kExitOk;
}

int cmd_equiv(const std::string& file_a, const std::string& file_b,
              const std::string& mode, int depth, const Theory& th)
{
    RegisterAutomaton a = load_automaton(file_a);
    RegisterAutomaton b = load_automaton(file_b);
    EquivMode m = mode == "data" ? EquivMode::Data : EquivMode::Symbolic;
    EquivalenceVerdict v = check_equivalence(a, b, m, depth, th);
    switch (v.result) {
    case EquivalenceVerdict::Equal:
        std::cout << "equal\n";
        return kExitOk;
    case EquivalenceVerdict::Inequivalent:
        std::cout << "inequivalent\n";
        if (v.counterexample)
            std::cout << "counterexample: " << print_symbolic_word(*v.counterexample)
                      << "\n";
        if (v.data_counterexample)
            std::cout << "data counterexample: "
                      << print_data_word(*v.data_counterexample) << "\n";
        std::cout << "accepted by: " << (v.accepting_side == 1 ? "first" : "second");
        if (v.sampled)
            std::cout << " (sampled)";
        std::cout << "\n";
        return kExitViolation;
    case EquivalenceVerdict::Undecided:
        std::cout << "unknown: " << v.note << (v.sampled ? " (sampled)" : "") << "\n";
        return kExitUnknown;
    }
    return kExitUsage;
}

int cmd_pipeline(const std::string& file, int depth, const std::string& out_dir,
                 const Theory& th)
{
    RegisterAutomaton a = load_automaton(file);
    std::filesystem::create_directories(out_dir);

    ExtractionResult ex = extract_relations(a, depth, th);
    write_file(out_dir + "/sample.txt", print_sample(ex.sample));
    write_file(out_dir + "/presentation.txt",
               print_presentation(ex.presentation, ex.sample));

    ConditionReport report = check_conditions(ex.sample, ex.presentation, th);
    {
        std::ostringstream os;
        for (const ConditionViolation& v : report.violations) {
            os << "condition " << v.condition << ": " << v.detail;
            if (v.extension)
                os << "  missing: " << print_symbolic_word(*v.extension);
            os << "\n";
        }
        os << "violations: " << report.violations.size()
           << ", boundary skips: " << report.boundary_skips
           << ", unknowns: " << report.unknowns << "\n";
        write_file(out_dir + "/report.txt", os.str());
    }
    std::cout << "violations: " << report.violations.size()
              << ", boundary skips: " << report.boundary_skips
              << ", unknowns: " << report.unknowns << "\n";
    if (!report.violations.empty())
        return kExitViolation;

    RegisterAutomaton b = synthesize(ex.sample, ex.presentation, th);
    write_file(out_dir + "/synthesized.ra", print_automaton(b));

    EquivalenceVerdict v = check_equivalence(a, b, EquivMode::Symbolic, depth, th);
    std::cout << "round trip at depth " << depth << ": "
              << (v.equal() ? "equal"
                            : v.result == EquivalenceVerdict::Undecided ? "unknown"
                                                                        : "different")
              << "\n";
    std::cout << "wrote sample.txt presentation.txt report.txt synthesized.ra in "
              << out_dir << "\n";
    if (v.result == EquivalenceVerdict::Inequivalent)
        return kExitViolation;
    if (v.result == EquivalenceVerdict::Undecided)
        return kExitUnknown;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"register automata with symbolic trace semantics"};
    app.require_subcommand(1);
    std::string theory_choice = "linear";
    app.add_option("--theory", theory_choice,
                   "data theory: linear, none or external:<solver-cmd>");

    std::string file, file_b, sample_file, pres_file, out, mode = "symbolic";
    std::vector<std::string> word_args;
    int depth = 0, an_n = 1;
    std::optional<int> bound;

    auto* check = app.add_subcommand("check", "validate an automaton file");
    check->add_option("file", file)->required();
    check->add_option("--bound", bound, "also run the bounded well-formedness check");

    auto* run = app.add_subcommand("run", "run a data word");
    run->add_option("file", file)->required();
    run->add_option("word", word_args, "data word, e.g. a(1) a(4)")->required();

    auto* symbolic = app.add_subcommand("symbolic", "match a symbolic word");
    symbolic->add_option("file", file)->required();
    symbolic
        ->add_option("word", word_args, "symbolic word, e.g. \"a [true] ; a [v1 <= v2]\"")
        ->required();

    auto* enumerate = app.add_subcommand("enumerate", "bounded symbolic language");
    enumerate->add_option("file", file)->required();
    enumerate->add_option("--depth", depth)->required();

    auto* extract = app.add_subcommand("extract", "sample + relation presentation");
    extract->add_option("file", file)->required();
    extract->add_option("--depth", depth)->required();
    extract->add_option("--out", out, "output directory");

    auto* check_regular =
        app.add_subcommand("check-regular", "run the regularity conditions");
    check_regular->add_option("sample", sample_file)->required();
    check_regular->add_option("presentation", pres_file)->required();

    auto* synthesize = app.add_subcommand("synthesize", "automaton from a presentation");
    synthesize->add_option("sample", sample_file)->required();
    synthesize->add_option("presentation", pres_file)->required();
    synthesize->add_option("-o,--out", out, "output file");

    auto* equiv = app.add_subcommand("equiv", "bounded equivalence of two automata");
    equiv->add_option("first", file)->required();
    equiv->add_option("second", file_b)->required();
    equiv->add_option("--mode", mode)->check(CLI::IsMember({"data", "symbolic"}));
    equiv->add_option("--depth", depth)->required();

    auto* export_smt = app.add_subcommand("export-smt", "guard as SMT-LIB");
    export_smt->add_option("guard", word_args)->required();

    auto* gen_an = app.add_subcommand("gen-an", "equality-pattern family member");
    gen_an->add_option("--n", an_n)->required();
    gen_an->add_option("-o,--out", out, "output file");

    auto* pipeline =
        app.add_subcommand("pipeline", "extract, check, synthesize, compare");
    pipeline->add_option("file", file)->required();
    pipeline->add_option("--depth", depth)->required();
    pipeline->add_option("--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Theory th = make_theory(theory_choice);
        if (check->parsed())
            return cmd_check(file, bound, th);
        if (run->parsed())
            return cmd_run(file, join_args(word_args));
        if (symbolic->parsed())
            return cmd_symbolic(file, join_args(word_args), th);
        if (enumerate->parsed())
            return cmd_enumerate(file, depth, th);
        if (extract->parsed())
            return cmd_extract(file, depth, out, th);
        if (check_regular->parsed())
            return cmd_check_regular(sample_file, pres_file, th);
        if (synthesize->parsed())
            return cmd_synthesize(sample_file, pres_file, out, th);
        if (equiv->parsed())
            return cmd_equiv(file, file_b, mode, depth, th);
        if (export_smt->parsed()) {
            std::cout << to_smtlib(parse_guard(join_args(word_args)));
            return kExitOk;
        }
        if (gen_an->parsed()) {
            std::string text = print_automaton(ra::gallery::equality_pattern(an_n));
            if (out.empty())
                std::cout << text;
            else {
                write_file(out, text);
                std::cout << "wrote " << out << "\n";
            }
            return kExitOk;
        }
        if (pipeline->parsed())
            return cmd_pipeline(file, depth, out, th);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UndefinedVariableError& e) {
        std::cerr << "undefined variable: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitUsage;
}
