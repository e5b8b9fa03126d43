#include "ivp/polynomial.hpp"

#include "ivp/error.hpp"

#include <cctype>
#include <sstream>

namespace ivp {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RationalPolynomial::RationalPolynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

RationalPolynomial RationalPolynomial::constant(const Rational& c) { return RationalPolynomial({c}); }

RationalPolynomial RationalPolynomial::x() { return RationalPolynomial({0, 1}); }

RationalPolynomial RationalPolynomial::monomial(const Rational& c, int k)
{
    std::vector<Rational> v(static_cast<std::size_t>(k) + 1, 0);
    v.back() = c;
    return RationalPolynomial(std::move(v));
}

void RationalPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Rational RationalPolynomial::coeff(int k) const
{
    if (k < 0 || k > degree())
        return 0;
    return coeffs_[static_cast<std::size_t>(k)];
}

bool RationalPolynomial::has_integer_coefficients() const
{
    for (const auto& c : coeffs_)
        if (!is_integral(c))
            return false;
    return true;
}

Integer RationalPolynomial::denominator() const { return common_denominator(coeffs_); }

IntVector RationalPolynomial::numerator() const
{
    Integer d = denominator();
    IntVector v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_)
        v.push_back(Rational(c * d).get_num());
    return v;
}

RationalPolynomial RationalPolynomial::monic() const
{
    if (is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "monic of zero");
    return *this * (1 / leading());
}

RationalPolynomial RationalPolynomial::derivative() const
{
    std::vector<Rational> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d.push_back(coeffs_[k] * static_cast<unsigned long>(k));
    return RationalPolynomial(std::move(d));
}

Rational RationalPolynomial::operator()(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
        coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
        coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& o)
{
    if (is_zero() || o.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> r(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            r[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    coeffs_ = std::move(r);
    trim();
    return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const Rational& c)
{
    for (auto& x : coeffs_)
        x *= c;
    trim();
    return *this;
}

RationalPolynomial RationalPolynomial::operator-() const { return *this * Rational(-1); }

RationalPolynomial RationalPolynomial::pow(unsigned long e) const
{
    RationalPolynomial result = constant(1), base = *this;
    while (e) {
        if (e & 1)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

RationalPolynomial RationalPolynomial::compose(const RationalPolynomial& inner) const
{
    RationalPolynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= inner;
        acc += constant(*it);
    }
    return acc;
}

std::string RationalPolynomial::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        Rational c = coeffs_[k];
        if (c == 0)
            continue;
        if (first) {
            if (c < 0) {
                os << '-';
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0)
                c = -c;
        }
        first = false;
        if (k == 0) {
            os << c.get_str();
            continue;
        }
        if (c != 1)
            os << c.get_str() << '*';
        os << 'X';
        if (k > 1)
            os << '^' << k;
    }
    return os.str();
}

std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b)
{
    if (b.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
    std::vector<Rational> r = a.coefficients();
    int db = b.degree();
    if (a.degree() < db)
        return {RationalPolynomial(), a};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db) + 1, 0);
    Rational inv = 1 / b.leading();
    for (int k = a.degree(); k >= db; --k) {
        Rational c = r[static_cast<std::size_t>(k)] * inv;
        if (c == 0)
            continue;
        q[static_cast<std::size_t>(k - db)] = c;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(k - db + j)] -= c * b.coefficients()[static_cast<std::size_t>(j)];
    }
    return {RationalPolynomial(std::move(q)), RationalPolynomial(std::move(r))};
}

RationalPolynomial operator/(const RationalPolynomial& a, const RationalPolynomial& b) { return divmod(a, b).first; }

RationalPolynomial operator%(const RationalPolynomial& a, const RationalPolynomial& b) { return divmod(a, b).second; }

RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b)
{
    RationalPolynomial x = a, y = b;
    while (!y.is_zero()) {
        RationalPolynomial r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.monic();
}

Bezout extended_gcd(const RationalPolynomial& a, const RationalPolynomial& b)
{
    RationalPolynomial r0 = a, r1 = b;
    RationalPolynomial s0 = RationalPolynomial::constant(1), s1;
    RationalPolynomial t0, t1 = RationalPolynomial::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        RationalPolynomial s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    Rational inv = 1 / r0.leading();
    return {r0 * inv, s0 * inv, t0 * inv};
}

bool is_squarefree(const RationalPolynomial& f)
{
    if (f.is_zero())
        return false;
    return gcd(f, f.derivative()).degree() == 0;
}

RationalPolynomial squarefree_part(const RationalPolynomial& f)
{
    if (f.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "squarefree part of zero");
    if (f.degree() == 0)
        return RationalPolynomial::constant(1);
    return (f / gcd(f, f.derivative())).monic();
}

RationalPolynomial charpoly(const linalg::RatMatrix& a)
{
    std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "charpoly of non-square matrix");
    std::vector<Rational> c(n + 1, 0);
    c[n] = 1;
    linalg::RatMatrix m(n, RatVector(n, 0));
    for (std::size_t k = 1; k <= n; ++k) {
        linalg::RatMatrix am = linalg::multiply(a, m);
        for (std::size_t i = 0; i < n; ++i)
            am[i][i] += c[n - k + 1];
        m = std::move(am);
        linalg::RatMatrix prod = linalg::multiply(a, m);
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            tr += prod[i][i];
        c[n - k] = -tr / static_cast<unsigned long>(k);
    }
    return RationalPolynomial(std::move(c));
}

RationalPolynomial charpoly_mod(const RationalPolynomial& g, const RationalPolynomial& m)
{
    if (m.degree() < 1)
        throw Error(ErrorCode::PreconditionFailed, "charpoly_mod needs a modulus of positive degree");
    std::size_t d = static_cast<std::size_t>(m.degree());
    linalg::RatMatrix mat(d, RatVector(d, 0));
    RationalPolynomial cur = g % m;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            mat[i][j] = cur.coeff(static_cast<int>(j));
        cur = (cur * RationalPolynomial::x()) % m;
    }
    return charpoly(mat);
}

namespace {

/* expr   := [+-] term {[+-] term}
 * term   := power {("*" or "/") power | power}, dividing by constants only
 * power  := atom [^ digits]
 * atom   := integer | X | ( expr ) */
class PolyParser {
  public:
    explicit PolyParser(std::string_view t)
    {
        for (char ch : t)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                s_.push_back(ch);
    }

    RationalPolynomial parse()
    {
        if (s_.empty())
            fail("empty polynomial");
        RationalPolynomial p = expr();
        if (pos_ != s_.size())
            fail(std::string("unexpected '") + peek() + "'");
        return p;
    }

  private:
    static constexpr int kMaxDegree = 1 << 20;

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    [[noreturn]] void fail(const std::string& why) const
    {
        throw Error(ErrorCode::MalformedInput, "polynomial '" + s_ + "': " + why);
    }

    std::string digits()
    {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    RationalPolynomial expr()
    {
        RationalPolynomial acc;
        bool first = true;
        while (first || peek() == '+' || peek() == '-') {
            int sign = 1;
            if (peek() == '+' || peek() == '-')
                sign = s_[pos_++] == '-' ? -1 : 1;
            first = false;
            acc += term() * Rational(sign);
        }
        return acc;
    }

    RationalPolynomial term()
    {
        RationalPolynomial acc = power();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc *= power();
            } else if (c == '/') {
                ++pos_;
                RationalPolynomial d = power();
                if (d.degree() > 0)
                    fail("division by a non-constant");
                if (d.is_zero())
                    fail("division by zero");
                acc *= Rational(1 / d.leading());
            } else if (c == 'X' || c == 'x' || c == '(') {
                acc *= power();
            } else {
                return acc;
            }
            if (acc.degree() > kMaxDegree)
                fail("degree too large");
        }
    }

    RationalPolynomial power()
    {
        RationalPolynomial base = atom();
        if (peek() != '^')
            return base;
        ++pos_;
        std::string ex = digits();
        if (ex.empty() || ex.size() > 7)
            fail("bad exponent");
        long e = std::stol(ex);
        if (base.degree() > 0 && static_cast<long>(base.degree()) * e > kMaxDegree)
            fail("degree too large");
        return base.pow(static_cast<unsigned long>(e));
    }

    RationalPolynomial atom()
    {
        char c = peek();
        if (c == '(') {
            ++pos_;
            RationalPolynomial p = expr();
            if (peek() != ')')
                fail("expected ')'");
            ++pos_;
            return p;
        }
        if (c == 'X' || c == 'x') {
            ++pos_;
            return RationalPolynomial::x();
        }
        std::string num = digits();
        if (num.empty())
            fail("expected a term");
        return RationalPolynomial::constant(Rational(Integer(num)));
    }

    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace

RationalPolynomial parse_polynomial(std::string_view text) { return PolyParser(text).parse(); }

} // namespace ivp
