#ifndef IVP_MODPOLY_HPP_
#define IVP_MODPOLY_HPP_

#include "ivp/rational.hpp"

#include <random>
#include <utility>
#include <vector>

/* Polynomials over Z/mZ with coefficients kept in [0, m), lowest degree
 * first, no trailing zeros. Division needs an invertible leading
 * coefficient; gcd and the factoring routines need m prime.
 */
namespace ivp::modp {

using Poly = IntVector;

class Ring {
  public:
    explicit Ring(Integer modulus);

    const Integer& modulus() const { return m_; }

    Poly reduce(const IntVector& f) const;
    Integer reduce(const Integer& c) const;
    /* Representative in (-m/2, m/2]. */
    Integer symmetric(const Integer& c) const;
    Poly symmetric(const Poly& f) const;

    Poly add(const Poly& a, const Poly& b) const;
    Poly sub(const Poly& a, const Poly& b) const;
    Poly mul(const Poly& a, const Poly& b) const;
    Poly scale(const Poly& a, const Integer& c) const;
    std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
    Poly rem(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
    Poly powmod(Poly base, Integer e, const Poly& modulus) const;
    Poly derivative(const Poly& a) const;
    Integer inverse(const Integer& c) const;
    Poly monic(const Poly& a) const;

    /* Monic gcd; m must be prime. */
    Poly gcd(Poly a, Poly b) const;
    /* s*a + t*b = gcd(a, b) (monic); m must be prime. */
    void xgcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t) const;

  private:
    Integer m_;
};

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

/* Factorization of f over F_p into monic irreducibles with multiplicities,
 * sorted by (degree, coefficients). f must be nonzero mod p. The
 * equal-degree splitting step draws from `rng`, so results are
 * reproducible for a fixed seed. */
std::vector<std::pair<Poly, int>> factor(const Poly& f, unsigned long p, std::mt19937_64& rng);
std::vector<std::pair<Poly, int>> factor(const Poly& f, unsigned long p);

} // namespace ivp::modp

#endif
