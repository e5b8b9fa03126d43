#ifndef IVP_RATIONAL_HPP_
#define IVP_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ivp {

/* mpq_class keeps the denominator positive and the fraction reduced
 * after every arithmetic operation, which is all we ask of BigRational.
 */
using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

bool is_integral(const RatVector& v);
bool is_zero(const RatVector& v);
bool is_zero(const IntVector& v);

/* Least common multiple of the denominators (1 for the empty vector). */
Integer common_denominator(const RatVector& v);

/* Denominator coprime to p, i.e. q lies in the localization Z_(p). */
bool in_localization(const Rational& q, unsigned long p);

RatVector to_rational(const IntVector& v);
/* Requires is_integral(v). */
IntVector to_integer(const RatVector& v);

/* gcd of the entries, 0 for the zero vector. */
Integer content(const IntVector& v);

/* p-adic valuation of a nonzero integer. */
unsigned long valuation(Integer n, const Integer& p);

Rational parse_rational(std::string_view s);
RatVector parse_rational_list(std::string_view s);

std::string to_string(const Rational& q);
std::string to_string(const RatVector& v);
std::string to_string(const IntVector& v);

/* n/d in lowest terms; d != 0 of either sign. */
Rational fraction(const Integer& n, const Integer& d);

Integer factorial(unsigned long n);
Integer ipow(const Integer& b, unsigned long e);

} // namespace ivp

#endif
