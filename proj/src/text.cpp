#include "ra/text.hpp"

#include "ra/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace ra {

namespace {

// ---------------------------------------------------------------------------
// Guard tokenizer + recursive-descent parser.
// ---------------------------------------------------------------------------

struct Token {
    enum Kind { Ident, Number, Punct, End } kind = End;
    std::string text;
    Rational number;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token take()
    {
        Token t = current_;
        advance();
        return t;
    }
    bool accept_punct(const std::string& p)
    {
        if (current_.kind == Token::Punct && current_.text == p) {
            advance();
            return true;
        }
        return false;
    }
    void expect_punct(const std::string& p)
    {
        if (!accept_punct(p))
            throw ParseError("expected '" + p + "' near '" + current_.text + "'");
    }
    /// Start offset of the current token; restore() re-lexes from there.
    size_t position() const { return token_start_; }
    void restore(size_t pos)
    {
        pos_ = pos;
        advance();
    }

private:
    void advance()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        token_start_ = pos_;
        if (pos_ >= text_.size()) {
            current_ = Token{Token::End, "<end>", {}};
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t begin = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            current_ = Token{Token::Ident, text_.substr(begin, pos_ - begin), {}};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t begin = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ + 1 < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/') &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                ++pos_;
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
            std::string lit = text_.substr(begin, pos_ - begin);
            current_ = Token{Token::Number, lit, parse_rational(lit)};
            return;
        }
        for (const char* two : {"&&", "||", "<=", ">=", "==", "!=", ":="})
            if (text_.compare(pos_, 2, two) == 0) {
                pos_ += 2;
                current_ = Token{Token::Punct, two, {}};
                return;
            }
        static const std::string singles = "()|+-*<>=!,";
        if (singles.find(c) != std::string::npos) {
            ++pos_;
            current_ = Token{Token::Punct, std::string(1, c), {}};
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    size_t pos_ = 0;
    size_t token_start_ = 0;
    Token current_;
};

Variable variable_from_name(const std::string& name)
{
    if (name == "p")
        return Variable::param();
    if (name.size() > 1 && name[0] == 'v' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
        int index = std::stoi(name.substr(1));
        if (index < 1)
            throw ParseError("marker indices start at v1: " + name);
        return Variable::marker(index);
    }
    return Variable::reg(name);
}

class GuardParser {
public:
    explicit GuardParser(Lexer& lex) : lex_(lex) {}

    Guard parse_disj()
    {
        std::vector<Guard> parts{parse_conj()};
        while (lex_.accept_punct("||"))
            parts.push_back(parse_conj());
        return Guard::disj(std::move(parts));
    }

private:
    Guard parse_conj()
    {
        std::vector<Guard> parts{parse_unary()};
        while (lex_.accept_punct("&&"))
            parts.push_back(parse_unary());
        return Guard::conj(std::move(parts));
    }

    Guard parse_unary()
    {
        if (lex_.accept_punct("!"))
            return Guard::negate(parse_unary());
        return parse_primary();
    }

    Guard parse_primary()
    {
        const Token& t = lex_.peek();
        if (t.kind == Token::Ident && t.text == "true") {
            lex_.take();
            return Guard::truth();
        }
        if (t.kind == Token::Ident && t.text == "false") {
            lex_.take();
            return Guard::falsity();
        }
        if (t.kind == Token::Punct && t.text == "(") {
            // Either a boolean group or a parenthesized arithmetic operand;
            // try the comparison route first and fall back.
            size_t mark = lex_.position();
            try {
                return parse_comparison();
            } catch (const ParseError&) {
                lex_.restore(mark);
            }
            lex_.expect_punct("(");
            Guard inner = parse_disj();
            lex_.expect_punct(")");
            return inner;
        }
        return parse_comparison();
    }

    struct Operand {
        Polynomial poly;
        bool is_abs = false;
    };

    Operand parse_operand()
    {
        if (lex_.accept_punct("|")) {
            Polynomial e = parse_expr();
            lex_.expect_punct("|");
            return {std::move(e), true};
        }
        return {parse_expr(), false};
    }

    Guard parse_comparison()
    {
        Operand lhs = parse_operand();
        const Token& t = lex_.peek();
        if (t.kind != Token::Punct)
            throw ParseError("expected comparison operator near '" + t.text + "'");
        std::string op = t.text;
        static const char* ops[] = {"<", "<=", ">", ">=", "=", "==", "!="};
        if (std::find_if(std::begin(ops), std::end(ops),
                         [&](const char* o) { return op == o; }) == std::end(ops))
            throw ParseError("expected comparison operator, got '" + op + "'");
        lex_.take();
        Operand rhs = parse_operand();

        if (op == ">" || op == ">=") {
            std::swap(lhs, rhs);
            op = op == ">" ? "<" : "<=";
        }
        if (lhs.is_abs && rhs.is_abs)
            throw ParseError("at most one side of a comparison may use |...|");
        if ((lhs.is_abs || rhs.is_abs) && (op == "=" || op == "==" || op == "!="))
            throw ParseError("|...| is supported with <, <=, > and >= only");

        if (op == "=" || op == "==")
            return Guard::cmp(Cmp::Eq, std::move(lhs.poly), std::move(rhs.poly));
        if (op == "!=")
            return Guard::negate(
                Guard::cmp(Cmp::Eq, std::move(lhs.poly), std::move(rhs.poly)));

        Cmp cmp = op == "<" ? Cmp::Lt : Cmp::Le;
        if (lhs.is_abs) { // |e| cmp f  ==  e cmp f ∧ -e cmp f
            Polynomial neg = poly_sub(Polynomial{}, lhs.poly);
            return Guard::conj(Guard::cmp(cmp, lhs.poly, rhs.poly),
                               Guard::cmp(cmp, std::move(neg), rhs.poly));
        }
        if (rhs.is_abs) { // f cmp |e|  ==  f cmp e ∨ f cmp -e
            Polynomial neg = poly_sub(Polynomial{}, rhs.poly);
            return Guard::disj(Guard::cmp(cmp, lhs.poly, rhs.poly),
                               Guard::cmp(cmp, lhs.poly, std::move(neg)));
        }
        return Guard::cmp(cmp, std::move(lhs.poly), std::move(rhs.poly));
    }

    Polynomial parse_expr()
    {
        Polynomial acc = parse_term();
        for (;;) {
            if (lex_.accept_punct("+"))
                acc = poly_add(std::move(acc), parse_term());
            else if (lex_.accept_punct("-"))
                acc = poly_sub(std::move(acc), parse_term());
            else
                return acc;
        }
    }

    Polynomial parse_term()
    {
        Polynomial acc = parse_factor();
        while (lex_.accept_punct("*"))
            acc = poly_mul(acc, parse_factor());
        return acc;
    }

    Polynomial parse_factor()
    {
        const Token& t = lex_.peek();
        if (t.kind == Token::Number) {
            Rational value = t.number;
            lex_.take();
            return poly_const(value);
        }
        if (t.kind == Token::Ident) {
            Variable v = variable_from_name(t.text);
            lex_.take();
            return poly_var(v);
        }
        if (lex_.accept_punct("(")) {
            Polynomial inner = parse_expr();
            lex_.expect_punct(")");
            return inner;
        }
        if (lex_.accept_punct("-"))
            return poly_sub(Polynomial{}, parse_factor());
        throw ParseError("expected an arithmetic operand near '" + t.text + "'");
    }

    Lexer& lex_;
};

std::string trim(const std::string& s)
{
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// ---------------------------------------------------------------------------
// Guard printer.
// ---------------------------------------------------------------------------

std::string print_monomial(const Monomial& m)
{
    std::string out;
    for (size_t i = 0; i < m.vars.size(); ++i) {
        if (i)
            out += "*";
        out += m.vars[i].str();
    }
    return out;
}

std::string print_atom(const Atom& a)
{
    std::vector<std::string> lhs, rhs;
    std::string lhs_const, rhs_const;
    for (const auto& [mono, coeff] : a.poly) {
        bool positive = coeff > 0;
        Rational mag = positive ? coeff : -coeff;
        std::string term;
        if (mono.degree() == 0)
            term = to_string(mag);
        else if (mag == 1)
            term = print_monomial(mono);
        else
            term = to_string(mag) + "*" + print_monomial(mono);
        if (mono.degree() == 0)
            (positive ? lhs_const : rhs_const) = term;
        else
            (positive ? lhs : rhs).push_back(term);
    }
    if (!lhs_const.empty())
        lhs.push_back(lhs_const);
    if (!rhs_const.empty())
        rhs.push_back(rhs_const);
    auto join = [](const std::vector<std::string>& terms) {
        if (terms.empty())
            return std::string("0");
        std::string out = terms[0];
        for (size_t i = 1; i < terms.size(); ++i)
            out += " + " + terms[i];
        return out;
    };
    const char* op = a.cmp == Cmp::Eq ? "=" : a.cmp == Cmp::Lt ? "<" : "<=";
    return join(lhs) + " " + op + " " + join(rhs);
}

std::string print_guard_prec(const Guard& g, bool inside_and)
{
    switch (g.kind()) {
    case GuardKind::True:
        return "true";
    case GuardKind::Atom:
        return print_atom(g.as_atom());
    case GuardKind::Not:
        if (g.is_false())
            return "false";
        return "!(" + print_guard_prec(g.children()[0], false) + ")";
    case GuardKind::And: {
        std::string out;
        for (size_t i = 0; i < g.children().size(); ++i) {
            if (i)
                out += " && ";
            out += print_guard_prec(g.children()[i], true);
        }
        return out;
    }
    case GuardKind::Or: {
        std::string out;
        for (size_t i = 0; i < g.children().size(); ++i) {
            if (i)
                out += " || ";
            out += print_guard_prec(g.children()[i], false);
        }
        return inside_and ? "(" + out + ")" : out;
    }
    }
    return "true";
}

} // namespace

Guard parse_guard(const std::string& text)
{
    Lexer lex(text);
    GuardParser parser(lex);
    Guard g = parser.parse_disj();
    if (lex.peek().kind != Token::End)
        throw ParseError("trailing input after guard: '" + lex.peek().text + "'");
    return g;
}

std::string print_guard(const Guard& g)
{
    return print_guard_prec(g, false);
}

// ---------------------------------------------------------------------------
// Words.
// ---------------------------------------------------------------------------

SymbolicWord parse_symbolic_word(const std::string& text)
{
    std::string body = trim(text);
    if (body.empty() || body == "epsilon")
        return {};
    SymbolicWord word;
    size_t pos = 0;
    while (pos < body.size()) {
        size_t open = body.find('[', pos);
        if (open == std::string::npos)
            throw ParseError("expected '[' in symbolic word segment");
        size_t close = body.find(']', open);
        if (close == std::string::npos)
            throw ParseError("unterminated guard bracket in symbolic word");
        std::string symbol = trim(body.substr(pos, open - pos));
        if (symbol.empty())
            throw ParseError("missing input symbol in symbolic word");
        Guard g = parse_guard(body.substr(open + 1, close - open - 1));
        word.push_back(SymbolicStep{symbol, std::move(g)});
        pos = close + 1;
        while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos])))
            ++pos;
        if (pos < body.size()) {
            if (body[pos] != ';')
                throw ParseError("expected ';' between symbolic word segments");
            ++pos;
        }
    }
    return word;
}

std::string print_symbolic_word(const SymbolicWord& w)
{
    if (w.empty())
        return "epsilon";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += " ; ";
        out += w[i].symbol + " [" + print_guard(w[i].guard) + "]";
    }
    return out;
}

DataWord parse_data_word(const std::string& text)
{
    std::string body = trim(text);
    if (body.empty() || body == "epsilon")
        return {};
    DataWord word;
    size_t pos = 0;
    while (pos < body.size()) {
        while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos])))
            ++pos;
        if (pos >= body.size())
            break;
        size_t open = body.find('(', pos);
        if (open == std::string::npos)
            throw ParseError("expected '(' in data word");
        size_t close = body.find(')', open);
        if (close == std::string::npos)
            throw ParseError("unterminated '(' in data word");
        std::string symbol = trim(body.substr(pos, open - pos));
        if (symbol.empty())
            throw ParseError("missing input symbol in data word");
        Rational value = parse_rational(trim(body.substr(open + 1, close - open - 1)));
        word.push_back(DataSymbol{symbol, value});
        pos = close + 1;
    }
    return word;
}

std::string print_data_word(const DataWord& w)
{
    if (w.empty())
        return "epsilon";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += " ";
        out += w[i].symbol + "(" + to_string(w[i].value) + ")";
    }
    return out;
}

std::string print_valuation(const Valuation& xi)
{
    std::string out = "{";
    bool first = true;
    for (const auto& [v, value] : xi) {
        if (!first)
            out += ", ";
        first = false;
        out += v.str() + "=" + to_string(value);
    }
    return out + "}";
}

std::string print_renaming(const Renaming& rho)
{
    std::string out = "{";
    bool first = true;
    for (const auto& [v, to] : rho) {
        if (!first)
            out += ", ";
        first = false;
        out += v.str() + " -> " + to.str();
    }
    return out + "}";
}

std::string print_configuration(const Configuration& c)
{
    return "(" + c.location + ", " + print_valuation(c.registers) + ")";
}

// ---------------------------------------------------------------------------
// Automaton files.
// ---------------------------------------------------------------------------

namespace {

std::string strip_comment(const std::string& line)
{
    auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> split_ws(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

Transition parse_transition_line(const std::string& line)
{
    size_t dashes = line.find("--");
    size_t open_guard = line.find('[');
    size_t close_guard = line.find(']', open_guard == std::string::npos ? 0 : open_guard);
    size_t open_assign = line.find('{', close_guard == std::string::npos ? 0 : close_guard);
    size_t close_assign =
        line.find('}', open_assign == std::string::npos ? 0 : open_assign);
    size_t arrow = line.find("-->", close_assign == std::string::npos ? 0 : close_assign);
    if (dashes == std::string::npos || open_guard == std::string::npos ||
        close_guard == std::string::npos || open_assign == std::string::npos ||
        close_assign == std::string::npos || arrow == std::string::npos)
        throw ParseError("malformed transition line: " + line);

    Transition t;
    t.source = trim(line.substr(0, dashes));
    t.symbol = trim(line.substr(dashes + 2, open_guard - dashes - 2));
    t.guard = parse_guard(line.substr(open_guard + 1, close_guard - open_guard - 1));
    std::string assigns = line.substr(open_assign + 1, close_assign - open_assign - 1);
    t.target = trim(line.substr(arrow + 3));
    if (t.source.empty() || t.symbol.empty() || t.target.empty())
        throw ParseError("malformed transition line: " + line);

    std::string chunk;
    std::istringstream as(assigns);
    while (std::getline(as, chunk, ',')) {
        chunk = trim(chunk);
        if (chunk.empty())
            continue;
        size_t walrus = chunk.find(":=");
        if (walrus == std::string::npos)
            throw ParseError("expected reg := source in assignment: " + chunk);
        Variable reg = variable_from_name(trim(chunk.substr(0, walrus)));
        Variable src = variable_from_name(trim(chunk.substr(walrus + 2)));
        if (!reg.is_register())
            throw ParseError("assignment target must be a register: " + chunk);
        if (!t.assign.updates.emplace(reg, src).second)
            throw ParseError("register assigned twice: " + chunk);
    }
    return t;
}

} // namespace

RegisterAutomaton parse_automaton(std::istream& in)
{
    std::vector<Symbol> alphabet;
    std::vector<Variable> registers;
    std::optional<Location> initial;
    std::vector<Transition> transitions;
    bool saw_alphabet = false, saw_registers = false;

    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = trim(strip_comment(raw));
        if (line.empty())
            continue;
        if (line.rfind("alphabet:", 0) == 0) {
            for (const std::string& s : split_ws(line.substr(9)))
                alphabet.push_back(s);
            saw_alphabet = true;
        } else if (line.rfind("registers:", 0) == 0) {
            for (const std::string& s : split_ws(line.substr(10))) {
                Variable v = variable_from_name(s);
                if (!v.is_register())
                    throw ParseError("register list contains non-register name: " + s);
                registers.push_back(v);
            }
            saw_registers = true;
        } else if (line.rfind("initial:", 0) == 0) {
            auto toks = split_ws(line.substr(8));
            if (toks.size() != 1)
                throw ParseError("initial: expects exactly one location");
            initial = toks[0];
        } else {
            transitions.push_back(parse_transition_line(line));
        }
    }
    if (!saw_alphabet || !saw_registers || !initial)
        throw ParseError("automaton file needs alphabet:, registers: and initial: headers");

    std::vector<Location> locations{*initial};
    for (const Transition& t : transitions) {
        locations.push_back(t.source);
        locations.push_back(t.target);
    }
    return RegisterAutomaton(std::move(alphabet), std::move(locations), *initial,
                             std::move(registers), std::move(transitions));
}

RegisterAutomaton parse_automaton_text(const std::string& text)
{
    std::istringstream is(text);
    return parse_automaton(is);
}

RegisterAutomaton load_automaton(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open automaton file: " + path);
    return parse_automaton(in);
}

std::string print_automaton(const RegisterAutomaton& a)
{
    std::ostringstream os;
    os << "alphabet:";
    for (const Symbol& s : a.alphabet())
        os << " " << s;
    os << "\nregisters:";
    for (const Variable& v : a.registers())
        os << " " << v.str();
    os << "\ninitial: " << a.initial() << "\n";

    std::vector<Transition> ts = a.transitions();
    std::sort(ts.begin(), ts.end(), [](const Transition& x, const Transition& y) {
        if (x.source != y.source)
            return x.source < y.source;
        if (x.symbol != y.symbol)
            return x.symbol < y.symbol;
        if (x.guard != y.guard)
            return x.guard < y.guard;
        return x.target < y.target;
    });
    for (const Transition& t : ts) {
        os << t.source << " --" << t.symbol << "[ " << print_guard(t.guard) << " ]{";
        bool first = true;
        for (const auto& [reg, src] : t.assign.updates) {
            os << (first ? " " : ", ") << reg.str() << " := " << src.str();
            first = false;
        }
        os << (first ? "}" : " }") << "--> " << t.target << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Samples and presentations.
// ---------------------------------------------------------------------------

LanguageSample parse_sample(std::istream& in, const Theory& th)
{
    std::optional<int> depth;
    std::vector<SymbolicWord> words;
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = trim(strip_comment(raw));
        if (line.empty())
            continue;
        if (line.rfind("depth:", 0) == 0) {
            depth = std::stoi(trim(line.substr(6)));
            continue;
        }
        words.push_back(parse_symbolic_word(line));
    }
    if (!depth)
        throw ParseError("sample file needs a depth: header");
    return make_sample(std::move(words), *depth, th);
}

LanguageSample load_sample(const std::string& path, const Theory& th)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open sample file: " + path);
    return parse_sample(in, th);
}

std::string print_sample(const LanguageSample& s)
{
    std::ostringstream os;
    os << "depth: " << s.depth << "\n";
    for (const SymbolicWord& w : s.words)
        os << print_symbolic_word(w) << "\n";
    return os.str();
}

RelationPresentation parse_presentation(std::istream& in, const LanguageSample& sample)
{
    RelationPresentation p;
    p.loc.assign(sample.size(), -1);
    p.trans.assign(sample.size(), -1);
    std::map<std::string, int> loc_ids, trans_ids, reg_ids;
    std::vector<bool> trans_seen(sample.size(), false);

    enum Section { None, Loc, Trans, Reg } section = None;
    std::string raw;
    auto class_id = [](std::map<std::string, int>& ids, std::vector<std::string>& names,
                       const std::string& token) {
        auto [it, inserted] = ids.emplace(token, static_cast<int>(ids.size()));
        if (inserted)
            names.push_back(token);
        return it->second;
    };
    while (std::getline(in, raw)) {
        std::string line = trim(strip_comment(raw));
        if (line.empty())
            continue;
        if (line == "[loc]") {
            section = Loc;
            continue;
        }
        if (line == "[trans]") {
            section = Trans;
            continue;
        }
        if (line == "[reg]") {
            section = Reg;
            continue;
        }
        size_t arrow = line.find("->");
        if (section == None || arrow == std::string::npos)
            throw ParseError("unexpected presentation line: " + line);
        std::vector<std::string> lhs = split_ws(line.substr(0, arrow));
        std::string token = trim(line.substr(arrow + 2));
        if (token.empty())
            throw ParseError("missing class id: " + line);
        if (section == Reg) {
            if (lhs.size() != 2)
                throw ParseError("[reg] lines are 'word-index marker -> class': " + line);
            size_t word = std::stoul(lhs[0]);
            Variable marker = variable_from_name(lhs[1]);
            if (word >= sample.size() || !marker.is_marker())
                throw ParseError("bad [reg] line: " + line);
            int m = marker.marker_index();
            if (m > static_cast<int>(sample.words[word].size()))
                throw ParseError("marker beyond word length: " + line);
            if (!p.reg.emplace(std::make_pair(word, m), class_id(reg_ids, p.reg_names, token))
                     .second)
                throw ParseError("duplicate [reg] entry: " + line);
        } else {
            if (lhs.size() != 1)
                throw ParseError("expected 'word-index -> class': " + line);
            size_t word = std::stoul(lhs[0]);
            if (word >= sample.size())
                throw ParseError("word index out of range: " + line);
            if (section == Loc) {
                if (p.loc[word] != -1)
                    throw ParseError("duplicate [loc] entry: " + line);
                p.loc[word] = class_id(loc_ids, p.loc_names, token);
            } else {
                if (trans_seen[word])
                    throw ParseError("duplicate [trans] entry: " + line);
                trans_seen[word] = true;
                p.trans[word] = class_id(trans_ids, p.trans_names, token);
            }
        }
    }
    validate_presentation(sample, p);
    return p;
}

RelationPresentation load_presentation(const std::string& path,
                                       const LanguageSample& sample)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open presentation file: " + path);
    return parse_presentation(in, sample);
}

std::string print_presentation(const RelationPresentation& p,
                               const LanguageSample& sample)
{
    auto name = [](const std::vector<std::string>& names, const char* prefix, int id) {
        if (id >= 0 && id < static_cast<int>(names.size()))
            return names[id];
        return std::string(prefix) + std::to_string(id);
    };
    std::ostringstream os;
    os << "[loc]\n";
    for (size_t i = 0; i < p.loc.size(); ++i)
        os << i << " -> " << name(p.loc_names, "L", p.loc[i]) << "\n";
    os << "[trans]\n";
    for (size_t i = 0; i < p.trans.size(); ++i)
        if (!sample.words[i].empty())
            os << i << " -> " << name(p.trans_names, "T", p.trans[i]) << "\n";
    os << "[reg]\n";
    for (const auto& [key, cls] : p.reg)
        os << key.first << " v" << key.second << " -> " << name(p.reg_names, "R", cls)
           << "\n";
    return os.str();
}

} // namespace ra
