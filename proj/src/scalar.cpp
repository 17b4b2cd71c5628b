#include "cwkirch/scalar.hpp"

#include <cctype>
#include <stdexcept>

#include "cwkirch/error.hpp"

namespace cwk {

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& q)
{
    if (mp::denominator(q) == 1)
        return mp::numerator(q).str();
    return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole)
{
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+'))
        ++i;
    if (i == text.size())
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    for (std::size_t k = i; k < text.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    std::string digits(text);
    if (digits.front() == '+')
        digits.erase(0, 1);
    return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text));
    const Integer num = parse_integer(text.substr(0, slash), text);
    const Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    // The two-argument constructor canonicalizes; the string one does not.
    return Rational(num, den);
}

Integer to_integer(const Rational& q)
{
    if (!is_integral(q))
        throw DegenerateError("expected an integer, got " + to_string(q));
    return mp::numerator(q);
}

Rational pow(const Rational& q, unsigned e)
{
    Rational out(1);
    Rational base = q;
    while (e) {
        if (e & 1u)
            out *= base;
        base *= base;
        e >>= 1u;
    }
    return out;
}

IntMatrix to_integer(const RatMatrix& m)
{
    IntMatrix out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            out(i, j) = to_integer(m(i, j));
    return out;
}

}  // namespace cwk
