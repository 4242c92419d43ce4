#include "ra/nerode.hpp"

#include "ra/errors.hpp"
#include "ra/text.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace ra {

std::optional<size_t> LanguageSample::index_of(const SymbolicWord& w) const
{
    auto it = std::lower_bound(words.begin(), words.end(), w, word_less);
    if (it != words.end() && compare_words(*it, w) == 0)
        return static_cast<size_t>(it - words.begin());
    return std::nullopt;
}

std::optional<size_t> LanguageSample::prefix_of(size_t word) const
{
    if (words[word].empty())
        return std::nullopt;
    SymbolicWord prefix(words[word].begin(), words[word].end() - 1);
    auto idx = index_of(prefix);
    if (!idx)
        throw PresentationError("sample is not prefix closed at " +
                                print_symbolic_word(words[word]));
    return idx;
}

LanguageSample make_sample(std::vector<SymbolicWord> words, int depth, const Theory& th,
                           std::vector<SymbolicWord>* undetermined)
{
    std::sort(words.begin(), words.end(), word_less);
    words.erase(std::unique(words.begin(), words.end()), words.end());

    LanguageSample s;
    s.depth = depth;
    s.words = std::move(words);
    if (s.words.empty() || !s.words[0].empty())
        throw PresentationError("sample must contain the empty word");
    for (const SymbolicWord& w : s.words)
        if (static_cast<int>(w.size()) > depth)
            throw PresentationError("sample word longer than the depth bound: " +
                                    print_symbolic_word(w));
    for (size_t i = 0; i < s.words.size(); ++i)
        s.prefix_of(i); // throws when not prefix closed

    // Feasibility. A feasible extension proves its prefix feasible, so decide
    // longest-first and propagate downward before judging unknowns.
    std::vector<FeasibilityResult::Kind> kind(s.words.size());
    for (size_t i = 0; i < s.words.size(); ++i) {
        FeasibilityResult r = is_feasible(s.words[i], th);
        if (r.kind == FeasibilityResult::Infeasible)
            throw PresentationError("sample contains an infeasible word: " +
                                    print_symbolic_word(s.words[i]) + " (" + r.reason +
                                    ")");
        kind[i] = r.kind;
    }
    for (size_t i = s.words.size(); i-- > 0;)
        if (kind[i] == FeasibilityResult::Feasible && !s.words[i].empty())
            kind[*s.prefix_of(i)] = FeasibilityResult::Feasible;

    std::vector<bool> drop(s.words.size(), false);
    for (size_t i = 0; i < s.words.size(); ++i) {
        bool bad = kind[i] == FeasibilityResult::Unknown;
        if (!s.words[i].empty() && drop[*s.prefix_of(i)])
            bad = true;
        if (bad) {
            if (!undetermined)
                throw PresentationError("feasibility undecided for sample word: " +
                                        print_symbolic_word(s.words[i]));
            undetermined->push_back(s.words[i]);
            drop[i] = true;
        }
    }
    if (undetermined) {
        std::vector<SymbolicWord> kept;
        for (size_t i = 0; i < s.words.size(); ++i)
            if (!drop[i])
                kept.push_back(std::move(s.words[i]));
        s.words = std::move(kept);
    }
    return s;
}

std::optional<int> RelationPresentation::reg_class(size_t word, int marker) const
{
    auto it = reg.find({word, marker});
    if (it == reg.end())
        return std::nullopt;
    return it->second;
}

std::optional<int> RelationPresentation::marker_in_class(size_t word, int cls) const
{
    for (auto it = reg.lower_bound({word, 0});
         it != reg.end() && it->first.first == word; ++it)
        if (it->second == cls)
            return it->first.second;
    return std::nullopt;
}

namespace {

int distinct_count(const std::vector<int>& ids, bool skip_negative)
{
    std::set<int> seen;
    for (int id : ids)
        if (!(skip_negative && id < 0))
            seen.insert(id);
    return static_cast<int>(seen.size());
}

} // namespace

int RelationPresentation::location_class_count() const
{
    return distinct_count(loc, false);
}

int RelationPresentation::transition_class_count() const
{
    return distinct_count(trans, true);
}

int RelationPresentation::register_class_count() const
{
    std::set<int> seen;
    for (const auto& [key, cls] : reg)
        seen.insert(cls);
    return static_cast<int>(seen.size());
}

void validate_presentation(const LanguageSample& sample, const RelationPresentation& p)
{
    if (p.loc.size() != sample.size() || p.trans.size() != sample.size())
        throw PresentationError("presentation maps do not cover the sample");
    for (size_t i = 0; i < sample.size(); ++i) {
        if (p.loc[i] < 0)
            throw PresentationError("location class missing for word " + std::to_string(i));
        bool empty = sample.words[i].empty();
        if (empty && p.trans[i] != -1)
            throw PresentationError("the empty word has no transition class");
        if (!empty && p.trans[i] < 0)
            throw PresentationError("transition class missing for word " +
                                    std::to_string(i));
    }
    for (const auto& [key, cls] : p.reg) {
        auto [word, marker] = key;
        if (word >= sample.size() || marker < 1 ||
            marker > static_cast<int>(sample.words[word].size()))
            throw PresentationError("register entry outside the sample");
        (void)cls;
    }
    // No two markers of one word may share a register class.
    for (size_t i = 0; i < sample.size(); ++i) {
        std::set<int> seen;
        for (auto it = p.reg.lower_bound({i, 0});
             it != p.reg.end() && it->first.first == i; ++it)
            if (!seen.insert(it->second).second)
                throw PresentationError(
                    "two markers of one word share a register class (word " +
                    std::to_string(i) + ")");
    }
}

ExtractionResult extract_relations(const RegisterAutomaton& a, int depth, const Theory& th)
{
    std::vector<EnumeratedRun> runs = enumerate_symbolic_runs(a, depth, th);

    struct Row {
        SymbolicWord word;
        Location location;
        std::optional<size_t> transition;
        Renaming zeta;
        bool undetermined;
    };
    std::vector<Row> rows;
    for (const EnumeratedRun& r : runs) {
        Row row;
        row.word = strace(r.run);
        row.location = r.run.final_location();
        if (!r.run.steps.empty())
            row.transition = r.run.steps.back().transition;
        row.zeta = r.run.final_zeta();
        row.undetermined = r.undetermined;
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const Row& x, const Row& y) { return word_less(x.word, y.word); });

    ExtractionResult out;
    out.sample.depth = depth;
    RelationPresentation& p = out.presentation;

    std::map<Location, int> loc_ids;
    std::map<size_t, int> trans_ids;
    std::map<Variable, int> reg_ids;
    for (Row& row : rows) {
        if (row.undetermined) {
            out.undetermined.push_back(std::move(row.word));
            continue;
        }
        size_t index = out.sample.words.size();
        out.sample.words.push_back(std::move(row.word));
        auto [lit, lnew] = loc_ids.emplace(row.location, static_cast<int>(loc_ids.size()));
        if (lnew)
            p.loc_names.push_back(row.location);
        p.loc.push_back(lit->second);
        if (row.transition) {
            auto [tit, tnew] =
                trans_ids.emplace(*row.transition, static_cast<int>(trans_ids.size()));
            if (tnew)
                p.trans_names.push_back("t" + std::to_string(*row.transition));
            p.trans.push_back(tit->second);
        } else {
            p.trans.push_back(-1);
        }
        for (const auto& [reg, marker] : row.zeta) {
            auto [rit, rnew] = reg_ids.emplace(reg, static_cast<int>(reg_ids.size()));
            if (rnew)
                p.reg_names.push_back(reg.str());
            p.reg[{index, marker.marker_index()}] = rit->second;
        }
    }
    validate_presentation(out.sample, p);
    return out;
}

namespace {

/// class id -> marker index tables, one per word; duplicates keep the first
/// marker (the separate Condition 1 check reports them).
std::vector<std::map<int, int>> class_tables(const LanguageSample& sample,
                                             const RelationPresentation& p)
{
    std::vector<std::map<int, int>> tables(sample.size());
    for (const auto& [key, cls] : p.reg)
        tables[key.first].emplace(cls, key.second);
    return tables;
}

Renaming matching_from_tables(const LanguageSample& sample,
                              const RelationPresentation& p,
                              const std::vector<std::map<int, int>>& tables, size_t w,
                              size_t w2)
{
    Renaming sigma;
    for (auto it = p.reg.lower_bound({w, 0}); it != p.reg.end() && it->first.first == w;
         ++it) {
        auto found = tables[w2].find(it->second);
        if (found != tables[w2].end())
            sigma[Variable::marker(it->first.second)] = Variable::marker(found->second);
    }
    int m = static_cast<int>(sample.words[w].size());
    int n = static_cast<int>(sample.words[w2].size());
    sigma[Variable::marker(m + 1)] = Variable::marker(n + 1);
    if (!is_injective(sigma))
        throw PresentationError("matching renaming is not injective");
    return sigma;
}

} // namespace

Renaming matching(const LanguageSample& sample, const RelationPresentation& p, size_t w,
                  size_t w2)
{
    // Uniqueness of the partner marker is Condition 1 on w2.
    std::vector<std::map<int, int>> tables(sample.size());
    for (const auto& [key, cls] : p.reg)
        if (!tables[key.first].emplace(cls, key.second).second)
            throw PresentationError(
                "two markers of one word share a register class (word " +
                std::to_string(key.first) + ")");
    return matching_from_tables(sample, p, tables, w, w2);
}

ConditionReport check_conditions(const LanguageSample& sample,
                                 const RelationPresentation& p, const Theory& th)
{
    validate_presentation(sample, p);
    ConditionReport report;
    const size_t n = sample.size();

    std::vector<std::optional<size_t>> pre(n);
    std::vector<std::vector<size_t>> ext(n);
    for (size_t i = 0; i < n; ++i) {
        pre[i] = sample.prefix_of(i);
        if (pre[i])
            ext[*pre[i]].push_back(i);
    }
    auto tables = class_tables(sample, p);
    auto last_guard = [&](size_t i) -> const Guard& { return sample.words[i].back().guard; };
    auto last_symbol = [&](size_t i) -> const Symbol& {
        return sample.words[i].back().symbol;
    };
    auto word_len = [&](size_t i) { return static_cast<int>(sample.words[i].size()); };
    auto stored = [&](size_t w, int marker) { return p.stores(w, marker); };
    auto violation = [&](int cond, std::vector<size_t> words, std::string detail,
                         std::optional<SymbolicWord> extension = std::nullopt) {
        report.violations.push_back(
            ConditionViolation{cond, std::move(words), std::move(extension),
                               std::move(detail)});
    };

    // Condition 1: a register holds one value per word.
    for (size_t i = 0; i < n; ++i) {
        std::map<int, int> seen;
        for (auto it = p.reg.lower_bound({i, 0});
             it != p.reg.end() && it->first.first == i; ++it) {
            auto [at, inserted] = seen.emplace(it->second, it->first.second);
            if (!inserted)
                violation(1, {i},
                          "markers v" + std::to_string(at->second) + " and v" +
                              std::to_string(it->first.second) + " of " +
                              print_symbolic_word(sample.words[i]) +
                              " share a register class");
        }
    }

    // Conditions 2-8 quantify over ≡t-related pairs of nonempty words.
    std::map<int, std::vector<size_t>> trans_groups;
    for (size_t i = 0; i < n; ++i)
        if (!sample.words[i].empty())
            trans_groups[p.trans[i]].push_back(i);

    for (const auto& [cls, members] : trans_groups) {
        for (size_t u : members)
            for (size_t u2 : members) {
                if (u == u2)
                    continue;
                size_t w = *pre[u], w2 = *pre[u2];
                std::string pair_detail = print_symbolic_word(sample.words[u]) + "  ≡t  " +
                                          print_symbolic_word(sample.words[u2]);
                if (u < u2) { // symmetric conclusions, report once
                    if (p.loc[w] != p.loc[w2])
                        violation(2, {u, u2}, pair_detail + " but prefixes differ in ≡l");
                    if (last_symbol(u) != last_symbol(u2))
                        violation(3, {u, u2}, pair_detail + " but input symbols differ");
                    if (p.loc[u] != p.loc[u2])
                        violation(5, {u, u2}, pair_detail + " but the words differ in ≡l");
                }
                if (last_symbol(u) == last_symbol(u2) && u < u2) {
                    // Condition 4: G[σ] ≡ G'.
                    try {
                        Renaming sigma = matching_from_tables(sample, p, tables, w, w2);
                        Guard renamed = rename_guard(last_guard(u), sigma);
                        if (!alpha_equal(renamed, last_guard(u2)))
                            violation(4, {u, u2},
                                      pair_detail + " but G[σ] = " + print_guard(renamed) +
                                          " differs from " + print_guard(last_guard(u2)));
                    } catch (const UndefinedVariableError& e) {
                        violation(4, {u, u2},
                                  pair_detail + " but G[σ] is undefined: " + e.what());
                    }
                }
                // Condition 6: final parameters stored together.
                if (stored(u, word_len(u))) {
                    auto cls_u = p.reg_class(u, word_len(u));
                    auto other = p.reg_class(u2, word_len(u2));
                    if (!other || *other != *cls_u)
                        violation(6, {u, u2},
                                  pair_detail + " but the final markers are not ≡r");
                }
                // Condition 7: shared registers stay shared while stored.
                for (auto it = p.reg.lower_bound({w, 0});
                     it != p.reg.end() && it->first.first == w; ++it) {
                    auto partner = tables[w2].find(it->second);
                    if (partner == tables[w2].end())
                        continue;
                    int v = it->first.second, v2 = partner->second;
                    if (!stored(u, v))
                        continue;
                    auto cu = p.reg_class(u, v), cu2 = p.reg_class(u2, v2);
                    if (!cu2 || *cu2 != *cu)
                        violation(7, {u, u2},
                                  pair_detail + " but (v" + std::to_string(v) + ", v" +
                                      std::to_string(v2) + ") fall out of ≡r");
                }
                // Condition 8: shared registers after the step were shared
                // before it (unless the final input was stored).
                for (auto it = p.reg.lower_bound({u, 0});
                     it != p.reg.end() && it->first.first == u; ++it) {
                    int v = it->first.second;
                    if (v == word_len(w) + 1)
                        continue;
                    auto partner = tables[u2].find(it->second);
                    if (partner == tables[u2].end())
                        continue;
                    int v2 = partner->second;
                    auto cw = p.reg_class(w, v), cw2 = p.reg_class(w2, v2);
                    if (!cw || !cw2 || *cw != *cw2)
                        violation(8, {u, u2},
                                  pair_detail + " but (v" + std::to_string(v) + ", v" +
                                      std::to_string(v2) +
                                      ") were not ≡r before the step");
                }
            }
    }

    // Conditions 9-11 quantify over ≡l-related pairs and their extensions.
    std::map<int, std::vector<size_t>> loc_groups;
    for (size_t i = 0; i < n; ++i)
        loc_groups[p.loc[i]].push_back(i);

    for (const auto& [cls, members] : loc_groups) {
        for (size_t i : members)
            for (size_t i2 : members) {
                std::optional<Renaming> sigma;
                try {
                    sigma = matching_from_tables(sample, p, tables, i, i2);
                } catch (const PresentationError&) {
                    continue; // Condition 1 violation already reported
                }
                for (size_t j : ext[i]) {
                    const Guard& G = last_guard(j);
                    // Condition 9: guard markers are stored along ≡l.
                    bool sigma_covers = true;
                    for (const Variable& v : vars(G)) {
                        if (v.marker_index() == word_len(i) + 1)
                            continue;
                        auto c = p.reg_class(i, v.marker_index());
                        if (!c || !tables[i2].count(*c)) {
                            sigma_covers = false;
                            violation(9, {i, i2, j},
                                      print_symbolic_word(sample.words[i]) + "  ≡l  " +
                                          print_symbolic_word(sample.words[i2]) +
                                          " but marker " + v.str() + " of " +
                                          print_guard(G) + " has no ≡r partner");
                        }
                    }
                    if (!sigma_covers)
                        continue;
                    Guard renamed = rename_guard(G, *sigma);
                    // Condition 10: right invariance.
                    SatResult sat =
                        is_satisfiable(Guard::conj(word_guard(sample.words[i2]), renamed),
                                       th);
                    if (sat.unknown())
                        ++report.unknowns;
                    if (sat.sat()) {
                        if (word_len(i2) + 1 > sample.depth) {
                            ++report.boundary_skips;
                        } else {
                            SymbolicWord target = sample.words[i2];
                            target.push_back(SymbolicStep{last_symbol(j), renamed});
                            if (!sample.index_of(target))
                                violation(10, {i, i2, j},
                                          print_symbolic_word(sample.words[i]) +
                                              "  ≡l  " +
                                              print_symbolic_word(sample.words[i2]) +
                                              " requires the extension to be in L",
                                          target);
                        }
                    }
                    // Condition 11: determinism.
                    for (size_t j2 : ext[i2]) {
                        if (last_symbol(j) != last_symbol(j2))
                            continue;
                        SatResult both =
                            is_satisfiable(Guard::conj(renamed, last_guard(j2)), th);
                        if (both.unknown())
                            ++report.unknowns;
                        if (both.sat() && p.trans[j] != p.trans[j2])
                            violation(11, {i, i2, j, j2},
                                      print_symbolic_word(sample.words[j]) + " and " +
                                          print_symbolic_word(sample.words[j2]) +
                                          " overlap but differ in ≡t");
                    }
                }
            }
    }
    return report;
}

DerivedDeterminismReport check_derived_determinism(const LanguageSample& sample,
                                                   const RelationPresentation& p,
                                                   const Theory& th)
{
    (void)th;
    validate_presentation(sample, p);
    DerivedDeterminismReport report;
    const size_t n = sample.size();
    std::vector<std::optional<size_t>> pre(n);
    std::vector<std::vector<size_t>> ext(n);
    for (size_t i = 0; i < n; ++i) {
        pre[i] = sample.prefix_of(i);
        if (pre[i])
            ext[*pre[i]].push_back(i);
    }
    auto tables = class_tables(sample, p);

    std::map<int, std::vector<size_t>> loc_groups;
    for (size_t i = 0; i < n; ++i)
        loc_groups[p.loc[i]].push_back(i);
    for (const auto& [cls, members] : loc_groups)
        for (size_t i : members)
            for (size_t i2 : members)
                for (size_t j : ext[i])
                    for (size_t j2 : ext[i2]) {
                        if (sample.words[j].back().symbol !=
                            sample.words[j2].back().symbol)
                            continue;
                        Guard renamed;
                        try {
                            Renaming sigma =
                                matching_from_tables(sample, p, tables, i, i2);
                            renamed = rename_guard(sample.words[j].back().guard, sigma);
                        } catch (const UndefinedVariableError&) {
                            continue;
                        } catch (const PresentationError&) {
                            continue;
                        }
                        if (alpha_equal(renamed, sample.words[j2].back().guard) &&
                            p.trans[j] != p.trans[j2])
                            report.failures.push_back({i, i2, j, j2});
                    }
    return report;
}

RegisterAutomaton synthesize(const LanguageSample& sample, const RelationPresentation& p,
                             const Theory& th)
{
    validate_presentation(sample, p);
    const size_t n = sample.size();
    std::vector<std::optional<size_t>> pre(n);
    for (size_t i = 0; i < n; ++i)
        pre[i] = sample.prefix_of(i);
    auto tables = class_tables(sample, p);

    // Deterministic names: locations and registers by first appearance in
    // sorted sample order.
    std::map<int, std::string> loc_name;
    for (size_t i = 0; i < n; ++i)
        loc_name.emplace(p.loc[i], "q" + std::to_string(loc_name.size()));
    std::map<int, std::string> reg_name;
    for (size_t i = 0; i < n; ++i)
        for (int m = 1; m <= static_cast<int>(sample.words[i].size()); ++m)
            if (auto cls = p.reg_class(i, m))
                reg_name.emplace(*cls, "r" + std::to_string(reg_name.size()));

    auto tau_for = [&](size_t j) {
        // Maps Var(G) of extension word j (with prefix w) to registers and p.
        size_t w = *pre[j];
        int m = static_cast<int>(sample.words[w].size());
        Renaming tau;
        for (const Variable& v : vars(sample.words[j].back().guard)) {
            if (v.marker_index() == m + 1) {
                tau[v] = Variable::param();
                continue;
            }
            auto cls = p.reg_class(w, v.marker_index());
            if (!cls)
                throw SynthesisError("guard marker " + v.str() + " of " +
                                     print_symbolic_word(sample.words[j]) +
                                     " is not stored by its prefix");
            tau[v] = Variable::reg(reg_name.at(*cls));
        }
        return tau;
    };

    std::map<int, std::vector<size_t>> trans_groups;
    for (size_t i = 0; i < n; ++i)
        if (!sample.words[i].empty())
            trans_groups[p.trans[i]].push_back(i);

    std::vector<std::pair<size_t, int>> order; // (representative, class)
    for (const auto& [cls, members] : trans_groups)
        order.emplace_back(members.front(), cls);
    std::sort(order.begin(), order.end());

    std::vector<Transition> transitions;
    for (const auto& [rep, cls] : order) {
        const auto& members = trans_groups.at(cls);
        Transition t;
        t.symbol = sample.words[rep].back().symbol;
        t.guard = rename_guard(sample.words[rep].back().guard, tau_for(rep));
        t.source = loc_name.at(p.loc[*pre[rep]]);
        t.target = loc_name.at(p.loc[rep]);
        for (size_t j : members) {
            if (sample.words[j].back().symbol != t.symbol)
                throw SynthesisError("transition class mixes input symbols");
            Guard member_guard = rename_guard(sample.words[j].back().guard, tau_for(j));
            if (!alpha_equal(member_guard, t.guard))
                throw SynthesisError(
                    "transition class guards disagree under matching: " +
                    print_guard(member_guard) + " vs " + print_guard(t.guard));
            if (loc_name.at(p.loc[*pre[j]]) != t.source)
                throw SynthesisError("transition class members disagree on the source");
            if (loc_name.at(p.loc[j]) != t.target)
                throw SynthesisError("transition class members disagree on the target");
            size_t w = *pre[j];
            int len_w = static_cast<int>(sample.words[w].size());
            for (auto it = p.reg.lower_bound({j, 0});
                 it != p.reg.end() && it->first.first == j; ++it) {
                int v = it->first.second;
                Variable target_reg = Variable::reg(reg_name.at(it->second));
                Variable source_var = Variable::param();
                if (v != len_w + 1) {
                    auto before = p.reg_class(w, v);
                    if (!before)
                        throw SynthesisError(
                            "stored marker v" + std::to_string(v) + " of " +
                            print_symbolic_word(sample.words[j]) +
                            " was not stored before the final step");
                    source_var = Variable::reg(reg_name.at(*before));
                }
                auto [at, inserted] = t.assign.updates.emplace(target_reg, source_var);
                if (!inserted && at->second != source_var)
                    throw SynthesisError("transition class members disagree on the "
                                         "assignment of " +
                                         target_reg.str());
            }
        }
        transitions.push_back(std::move(t));
    }

    std::vector<Symbol> alphabet;
    for (const SymbolicWord& w : sample.words)
        for (const SymbolicStep& s : w)
            alphabet.push_back(s.symbol);
    std::vector<Location> locations;
    for (const auto& [cls, name] : loc_name)
        locations.push_back(name);
    std::vector<Variable> registers;
    for (const auto& [cls, name] : reg_name)
        registers.push_back(Variable::reg(name));

    const SymbolicWord empty_word;
    auto eps = sample.index_of(empty_word);
    assert(eps && *eps == 0);
    Location initial = loc_name.at(p.loc[*eps]);

    try {
        RegisterAutomaton a(std::move(alphabet), std::move(locations), initial,
                            std::move(registers), std::move(transitions));
        ValidationReport v = validate(a, th);
        if (!v.ok())
            throw SynthesisError("synthesized automaton fails validation; the "
                                 "presentation slipped past the condition checker");
        if (!check_well_formed_syntactic(a).ok())
            throw SynthesisError("synthesized automaton fails the syntactic "
                                 "well-formedness check");
        return a;
    } catch (const AutomatonError& e) {
        throw SynthesisError(std::string("synthesized automaton is ill-formed: ") +
                             e.what());
    }
}

} // namespace ra
