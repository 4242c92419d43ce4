#include "ra/smtlib.hpp"

#include "ra/errors.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>
#include <unistd.h>
#include <vector>

namespace ra {

namespace {

std::string smt_rational(const Rational& r)
{
    Integer num = numerator(r);
    Integer den = denominator(r);
    std::string n = num < 0 ? "(- " + Integer(-num).str() + ")" : num.str();
    if (den == 1)
        return n;
    return "(/ " + n + " " + den.str() + ")";
}

std::string smt_poly(const Polynomial& poly)
{
    std::vector<std::string> terms;
    for (const auto& [mono, coeff] : poly) {
        std::ostringstream term;
        if (mono.degree() == 0) {
            term << smt_rational(coeff);
        } else {
            term << "(* " << smt_rational(coeff);
            for (const Variable& v : mono.vars)
                term << " " << v.str();
            term << ")";
        }
        terms.push_back(term.str());
    }
    if (terms.empty())
        return "0";
    if (terms.size() == 1)
        return terms[0];
    std::string out = "(+";
    for (const std::string& t : terms)
        out += " " + t;
    return out + ")";
}

std::string smt_guard(const Guard& g)
{
    switch (g.kind()) {
    case GuardKind::True:
        return "true";
    case GuardKind::Atom: {
        const Atom& a = g.as_atom();
        const char* op = a.cmp == Cmp::Eq ? "=" : a.cmp == Cmp::Lt ? "<" : "<=";
        return std::string("(") + op + " " + smt_poly(a.poly) + " 0)";
    }
    case GuardKind::Not:
        return "(not " + smt_guard(g.children()[0]) + ")";
    case GuardKind::And:
    case GuardKind::Or: {
        std::string out = g.kind() == GuardKind::And ? "(and" : "(or";
        for (const Guard& c : g.children())
            out += " " + smt_guard(c);
        return out + ")";
    }
    }
    return "true";
}

std::vector<std::string> tokenize(const std::string& text)
{
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (c == '(' || c == ')') {
            if (!current.empty()) {
                tokens.push_back(current);
                current.clear();
            }
            tokens.push_back(std::string(1, c));
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) {
                tokens.push_back(current);
                current.clear();
            }
        } else {
            current += c;
        }
    }
    if (!current.empty())
        tokens.push_back(current);
    return tokens;
}

/// Evaluates a numeric SMT term: NUM | (- t) | (/ t t) | (+ t t) | (* t t).
/// Returns nullopt (and leaves pos untouched on entry failure) otherwise.
std::optional<Rational> parse_value(const std::vector<std::string>& tokens, size_t& pos)
{
    if (pos >= tokens.size())
        return std::nullopt;
    if (tokens[pos] != "(") {
        try {
            Rational r = parse_rational(tokens[pos]);
            ++pos;
            return r;
        } catch (const ParseError&) {
            return std::nullopt;
        }
    }
    ++pos; // '('
    if (pos >= tokens.size())
        return std::nullopt;
    std::string op = tokens[pos++];
    std::vector<Rational> args;
    while (pos < tokens.size() && tokens[pos] != ")") {
        auto arg = parse_value(tokens, pos);
        if (!arg)
            return std::nullopt;
        args.push_back(*arg);
    }
    if (pos >= tokens.size())
        return std::nullopt;
    ++pos; // ')'
    if (op == "-" && args.size() == 1)
        return -args[0];
    if (op == "-" && args.size() == 2)
        return args[0] - args[1];
    if (op == "/" && args.size() == 2 && args[1] != 0)
        return args[0] / args[1];
    if (op == "+" && args.size() == 2)
        return args[0] + args[1];
    if (op == "*" && args.size() == 2)
        return args[0] * args[1];
    return std::nullopt;
}

Variable variable_named(const std::string& name)
{
    if (name == "p")
        return Variable::param();
    if (name.size() > 1 && name[0] == 'v') {
        bool digits = true;
        for (size_t i = 1; i < name.size(); ++i)
            digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
        if (digits)
            return Variable::marker(std::stoi(name.substr(1)));
    }
    return Variable::reg(name);
}

} // namespace

std::string to_smtlib(const Guard& g)
{
    std::ostringstream os;
    os << "(set-logic QF_NRA)\n";
    for (const Variable& v : vars(g))
        os << "(declare-const " << v.str() << " Real)\n";
    os << "(assert " << smt_guard(g) << ")\n";
    os << "(check-sat)\n";
    os << "(get-model)\n";
    return os.str();
}

SatResult smt_solve_external(const Guard& g, const std::string& solver_cmd)
{
    std::string script = to_smtlib(g);

    std::string path = "/tmp/ra_smt_" + std::to_string(::getpid()) + ".smt2";
    {
        std::unique_ptr<FILE, int (*)(FILE*)> f(std::fopen(path.c_str(), "w"),
                                                &std::fclose);
        if (!f)
            return SatResult::make_unknown("cannot write solver input");
        std::fwrite(script.data(), 1, script.size(), f.get());
    }
    std::string command = solver_cmd + " < " + path;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(::popen(command.c_str(), "r"), &::pclose);
    if (!pipe)
        return SatResult::make_unknown("cannot launch external solver");
    std::string output;
    std::array<char, 4096> buffer;
    size_t got;
    while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe.get())) > 0)
        output.append(buffer.data(), got);
    pipe.reset();
    std::remove(path.c_str());

    std::istringstream lines(output);
    std::string verdict;
    std::getline(lines, verdict);
    while (!verdict.empty() && std::isspace(static_cast<unsigned char>(verdict.back())))
        verdict.pop_back();

    if (verdict == "unsat")
        return SatResult::make_unsat();
    if (verdict != "sat")
        return SatResult::make_unknown("external solver answered: " + verdict);

    // Try to recover a model: (define-fun NAME () Real VALUE) or (NAME VALUE).
    Valuation xi;
    std::vector<std::string> tokens = tokenize(output.substr(verdict.size()));
    for (size_t i = 0; i + 1 < tokens.size(); ++i) {
        size_t pos = 0;
        if (tokens[i] == "define-fun" && i + 5 < tokens.size() && tokens[i + 2] == "(" &&
            tokens[i + 3] == ")" && tokens[i + 4] == "Real") {
            pos = i + 5;
            auto value = parse_value(tokens, pos);
            if (value)
                xi[variable_named(tokens[i + 1])] = *value;
        } else if (tokens[i] == "(" && i + 2 < tokens.size() && tokens[i + 1] != "(" &&
                   tokens[i + 1] != ")" && tokens[i + 1] != "define-fun") {
            pos = i + 2;
            auto value = parse_value(tokens, pos);
            if (value && pos < tokens.size() && tokens[pos] == ")")
                xi.emplace(variable_named(tokens[i + 1]), *value);
        }
    }
    for (const Variable& v : vars(g))
        xi.emplace(v, 0);
    try {
        if (eval_guard(g, xi))
            return SatResult::make_sat(std::move(xi));
    } catch (const UndefinedVariableError&) {
    }
    return SatResult::make_unknown("external sat without a verifiable model");
}

} // namespace ra
