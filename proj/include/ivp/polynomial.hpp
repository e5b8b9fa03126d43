#ifndef IVP_POLYNOMIAL_HPP_
#define IVP_POLYNOMIAL_HPP_

#include "ivp/linalg.hpp"
#include "ivp/rational.hpp"

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ivp {

/* Dense univariate polynomial over Q, lowest degree first. The coefficient
 * list never has a trailing zero, so the zero polynomial is empty and has
 * degree -1.
 */
class RationalPolynomial {
  public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coeffs);
    RationalPolynomial(std::initializer_list<Rational> coeffs);

    static RationalPolynomial constant(const Rational& c);
    static RationalPolynomial x();
    /* c * X^k */
    static RationalPolynomial monomial(const Rational& c, int k);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }

    const std::vector<Rational>& coefficients() const { return coeffs_; }
    /* Coefficient of X^k; zero beyond the degree. */
    Rational coeff(int k) const;
    const Rational& leading() const { return coeffs_.back(); }

    bool has_integer_coefficients() const;
    /* Least common multiple of the coefficient denominators. */
    Integer denominator() const;
    /* denominator() * f, an integer-coefficient polynomial. */
    IntVector numerator() const;

    RationalPolynomial monic() const;
    RationalPolynomial derivative() const;

    Rational operator()(const Rational& x) const;

    RationalPolynomial& operator+=(const RationalPolynomial& o);
    RationalPolynomial& operator-=(const RationalPolynomial& o);
    RationalPolynomial& operator*=(const RationalPolynomial& o);
    RationalPolynomial& operator*=(const Rational& c);

    friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
    friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
    friend RationalPolynomial operator*(RationalPolynomial a, const RationalPolynomial& b) { return a *= b; }
    friend RationalPolynomial operator*(RationalPolynomial a, const Rational& c) { return a *= c; }
    friend RationalPolynomial operator*(const Rational& c, RationalPolynomial a) { return a *= c; }
    RationalPolynomial operator-() const;

    bool operator==(const RationalPolynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const RationalPolynomial& o) const { return !(*this == o); }

    RationalPolynomial pow(unsigned long e) const;
    /* f(g(X)) */
    RationalPolynomial compose(const RationalPolynomial& inner) const;

    /* Sparse text form "c0 + c1*X + c2*X^2", zero terms omitted. */
    std::string to_string() const;

  private:
    void trim();
    std::vector<Rational> coeffs_;
};

/* Quotient and remainder; throws ZeroPolynomial on division by zero. */
std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b);
RationalPolynomial operator/(const RationalPolynomial& a, const RationalPolynomial& b);
RationalPolynomial operator%(const RationalPolynomial& a, const RationalPolynomial& b);

/* Monic gcd (zero when both inputs are zero). */
RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b);

struct Bezout {
    RationalPolynomial gcd, s, t; // s*a + t*b = gcd, gcd monic
};
Bezout extended_gcd(const RationalPolynomial& a, const RationalPolynomial& b);

bool is_squarefree(const RationalPolynomial& f);
/* Product of the distinct monic irreducible factors of f. */
RationalPolynomial squarefree_part(const RationalPolynomial& f);

/* Characteristic polynomial of multiplication by g on Q[X]/(m). */
RationalPolynomial charpoly_mod(const RationalPolynomial& g, const RationalPolynomial& m);

/* Characteristic polynomial det(X - m) of a square matrix (Faddeev-LeVerrier). */
RationalPolynomial charpoly(const linalg::RatMatrix& m);

/* Parses the sparse text form: terms such as "3", "-1/2*X", "X^3", "2X^2"
 * joined by + and -. Throws MalformedInput. */
RationalPolynomial parse_polynomial(std::string_view text);

} // namespace ivp

#endif
