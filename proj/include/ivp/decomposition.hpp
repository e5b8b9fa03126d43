#ifndef IVP_DECOMPOSITION_HPP_
#define IVP_DECOMPOSITION_HPP_

#include "ivp/order.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace ivp {

/* B = prod B e_i with each B e_i a number field Q[X]/(g_i). */
struct Decomposition {
    AlgebraElement primitive;
    RationalPolynomial primitive_minpoly; // = prod g_i
    std::vector<AlgebraElement> idempotents;
    std::vector<linalg::RatMatrix> component_bases; // rational basis of B e_i, ambient coordinates
    std::vector<RationalPolynomial> component_minpolys;

    std::size_t size() const { return idempotents.size(); }
};

/* Deterministic search for a in A with deg(mu_a) = dim B. Candidates are
 * the integer vectors of max-norm 1, 2, ... up to `max_norm`, ordered by
 * the coefficient sequence 0, 1, -1, 2, -2, ... with the first coordinate
 * varying fastest. Requires B commutative. */
AlgebraElement find_primitive_element(const ZOrder& a, int max_norm = 6);

/* Visits the same candidates as find_primitive_element, in the same order,
 * stopping when `accept` returns true. Returns false if none was accepted. */
bool for_each_primitive_candidate(const ZOrder& a, int max_norm,
                                  const std::function<bool(const AlgebraElement&, const RationalPolynomial&)>& accept);

/* Throws NotReduced when mu of the primitive element is not squarefree. */
Decomposition decompose(const ZOrder& a);

struct IdempotentCheck {
    bool all_in_A = true;
    std::optional<std::size_t> escaping; // index of the first e_i outside A
};
IdempotentCheck idempotents_in_A(const ZOrder& a, const Decomposition& dec);

/* A e_i as an order of its own, with basis rows (ambient coordinates) in
 * HNF. Requires e_i in A. */
EmbeddedOrder component_order(const ZOrder& a, const Decomposition& dec, std::size_t i);

} // namespace ivp

#endif
