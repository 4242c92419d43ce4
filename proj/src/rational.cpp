#include "ra/rational.hpp"

#include "ra/errors.hpp"

#include <cctype>

namespace ra {

namespace {

bool all_digits(const std::string& s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text)
{
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty())
        throw ParseError("empty rational literal");

    Rational value;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("bad rational literal: " + text);
        Integer d(den);
        if (d == 0)
            throw ParseError("zero denominator: " + text);
        value = Rational(Integer(num), d);
    } else if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (whole.empty())
            whole = "0";
        if (!all_digits(whole) || !all_digits(frac))
            throw ParseError("bad rational literal: " + text);
        Integer scale = 1;
        for (size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        value = Rational(Integer(whole) * scale + Integer(frac), scale);
    } else {
        if (!all_digits(s))
            throw ParseError("bad rational literal: " + text);
        value = Rational(Integer(s));
    }
    return neg ? -value : value;
}

std::string to_string(const Rational& value)
{
    std::string s = numerator(value).str();
    if (denominator(value) != 1)
        s += "/" + denominator(value).str();
    return s;
}

} // namespace ra
