#ifndef IVP_FACTOR_HPP_
#define IVP_FACTOR_HPP_

#include "ivp/polynomial.hpp"
#include "ivp/rational.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ivp {

constexpr int kMaxFactorDegree = 32;

struct RationalFactorization {
    Rational unit;                                          // leading coefficient of the input
    std::vector<std::pair<RationalPolynomial, int>> factors; // monic irreducible, multiplicity

    RationalPolynomial expand() const;
};

/* Zassenhaus: squarefree decomposition, factorization modulo a good prime,
 * quadratic Hensel lifting and subset recombination. Throws ZeroPolynomial
 * for f = 0 and DegreeTooLarge above kMaxFactorDegree. */
RationalFactorization poly_factor_q(const RationalPolynomial& f);

/* Integer factorization for discriminants: trial division up to 10^6, then
 * Pollard rho within `rho_budget` iterations per split. Returns the prime
 * factorization of |n| (n != 0), or throws DiscFactorizationFailed. */
std::vector<std::pair<Integer, unsigned long>> factor_integer(const Integer& n,
                                                              std::uint64_t rho_budget = 2000000);

} // namespace ivp

#endif
