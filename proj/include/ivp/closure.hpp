#ifndef IVP_CLOSURE_HPP_
#define IVP_CLOSURE_HPP_

#include "ivp/order.hpp"

#include <optional>
#include <vector>

namespace ivp {

struct IntegralityVerdict {
    AlgebraElement element;
    RationalPolynomial minpoly;
    bool integral = false; // minpoly in Z[X]
    bool in_A = false;
};

/* Over Z, b is integral iff its minimal polynomial has integer coefficients. */
IntegralityVerdict is_integral(const ZOrder& a, const AlgebraElement& b);

/* The p-radical of a commutative order O: the preimage in O of the
 * nilradical of O/pO, computed as the kernel of x -> x^(p^k) with
 * p^k >= dim O. Contains pO. */
IntegerLattice p_radical(const ZOrder& o, const Integer& p);

/* {x in B : x I in I} for a full-rank ideal lattice I of a commutative
 * order O; basis rows in O's coordinates, in rational HNF. */
EmbeddedOrder ring_of_multipliers(const ZOrder& o, const IntegerLattice& ideal);

/* O is p-maximal iff its p-radical has no larger ring of multipliers. */
bool is_p_maximal(const ZOrder& o, const Integer& p);

struct MaximalOrderResult {
    EmbeddedOrder order;              // basis rows in the input's coordinates, rational HNF
    Integer index;                    // [O_F : O]
    Integer disc_input, disc_maximal; // disc_input = disc_maximal * index^2
    std::vector<Integer> primes;      // primes p with p^2 | disc_input
};

/* Round 2: for each p with p^2 | disc(O), replace O by the multiplier ring
 * of its p-radical until it stops growing. Requires O commutative with
 * nonzero discriminant (B a product of number fields). Throws
 * DiscFactorizationFailed when disc(O) cannot be factored. */
MaximalOrderResult maximal_order(const ZOrder& o);

struct ClosednessResult {
    bool closed = false;
    std::optional<AlgebraElement> witness; // first maximal-order basis vector outside O
    MaximalOrderResult maximal;
};
ClosednessResult is_integrally_closed_order(const ZOrder& o);

} // namespace ivp

#endif
