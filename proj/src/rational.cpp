#include "ivp/rational.hpp"

#include "ivp/error.hpp"

#include <cctype>
#include <sstream>

namespace ivp {

bool is_integral(const RatVector& v)
{
    for (const auto& q : v)
        if (!is_integral(q))
            return false;
    return true;
}

bool is_zero(const RatVector& v)
{
    for (const auto& q : v)
        if (q != 0)
            return false;
    return true;
}

bool is_zero(const IntVector& v)
{
    for (const auto& q : v)
        if (q != 0)
            return false;
    return true;
}

Integer common_denominator(const RatVector& v)
{
    Integer d = 1;
    for (const auto& q : v)
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
    return d;
}

bool in_localization(const Rational& q, unsigned long p)
{
    return mpz_divisible_ui_p(q.get_den_mpz_t(), p) == 0;
}

RatVector to_rational(const IntVector& v)
{
    RatVector r;
    r.reserve(v.size());
    for (const auto& x : v)
        r.emplace_back(x);
    return r;
}

IntVector to_integer(const RatVector& v)
{
    IntVector r;
    r.reserve(v.size());
    for (const auto& x : v) {
        if (!is_integral(x))
            throw Error(ErrorCode::InternalError, "to_integer on non-integral vector");
        r.push_back(x.get_num());
    }
    return r;
}

Integer content(const IntVector& v)
{
    Integer g = 0;
    for (const auto& x : v)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

unsigned long valuation(Integer n, const Integer& p)
{
    unsigned long v = 0;
    if (n == 0)
        throw Error(ErrorCode::PreconditionFailed, "valuation of zero");
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

static std::string_view strip(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

Rational parse_rational(std::string_view s)
{
    s = strip(s);
    if (s.empty())
        throw Error(ErrorCode::MalformedInput, "empty rational");
    std::string text(s);
    if (text.front() == '+')
        text.erase(0, 1);
    auto slash = text.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                return false;
        return true;
    };
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-')
        throw Error(ErrorCode::MalformedInput, "bad rational '" + std::string(s) + "'");
    Integer dz(den);
    if (dz == 0)
        throw Error(ErrorCode::MalformedInput, "zero denominator");
    Rational q{Integer(num), dz};
    q.canonicalize();
    return q;
}

RatVector parse_rational_list(std::string_view s)
{
    RatVector out;
    while (true) {
        auto comma = s.find(',');
        out.push_back(parse_rational(s.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const RatVector& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i].get_str();
    os << ')';
    return os.str();
}

std::string to_string(const IntVector& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i].get_str();
    os << ')';
    return os.str();
}

Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer ipow(const Integer& b, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rational fraction(const Integer& n, const Integer& d)
{
    if (d == 0)
        throw Error(ErrorCode::PreconditionFailed, "zero denominator");
    Rational q{n, d};
    q.canonicalize();
    return q;
}

} // namespace ivp
