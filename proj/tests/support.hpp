#ifndef IVP_TESTS_SUPPORT_HPP_
#define IVP_TESTS_SUPPORT_HPP_

#include "ivp/order.hpp"

#include "ivp/error.hpp"
#include "ivp/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ivp::testing {

std::string data_path(const std::string& name);
ZOrder corpus(const std::string& name);
std::vector<std::string> corpus_names();

/* Z[x]/(f) for monic f, basis 1, x, ..., x^(n-1). */
ZOrder monogenic(const std::vector<long>& f_low_first);
ZOrder matrix_ring_2x2();

AlgebraElement vec(std::initializer_list<long> xs);
AlgebraElement mat(long a, long b, long c, long d);

long uniform(std::mt19937_64& rng, long lo, long hi);
RationalPolynomial random_poly(std::mt19937_64& rng, int max_deg, long bound, long max_den = 1);
AlgebraElement random_element(std::mt19937_64& rng, std::size_t n, long bound);

/* Random order of dimension <= max_dim: a monogenic order, or a product of
 * two smaller ones. */
ZOrder random_order(std::mt19937_64& rng, std::size_t max_dim);

/* Code of the ivp::Error thrown by fn, or nullopt when it returns. */
template <class Fn> std::optional<ErrorCode> error_code(Fn&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

/* f(a) by Horner with the order's own multiplication; no modular tricks. */
AlgebraElement horner(const ZOrder& a, const RationalPolynomial& f, const AlgebraElement& x);

/* f in Int_Q(A) by evaluating f at every point of [0, d)^n, d = den(f). */
bool brute_int_member(const ZOrder& a, const RationalPolynomial& f);

/* Polynomials lying in Int_Q(A) for a commutative A of dimension n with
 * denominator d in {2, 3, 4}: X^n (X^(L q^k) - 1) kills A/qA. */
RationalPolynomial vanishing_poly(std::size_t n, long d);

/* Random (order, f) pair with dim <= 3 and den(f) <= 4; about half the
 * polynomials are built to be integer valued. */
std::pair<ZOrder, RationalPolynomial> random_membership_case(std::mt19937_64& rng);

/* Seeded pool of `count` polynomials in Int_Q(O) for O = Z, Z[i] or
 * Z[(1+sqrt5)/2] (keys "z", "z_i", "z_golden"). */
std::vector<RationalPolynomial> transform_pool(const std::string& field, std::uint64_t seed, int count = 50);

} // namespace ivp::testing

#endif
