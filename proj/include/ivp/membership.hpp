#ifndef IVP_MEMBERSHIP_HPP_
#define IVP_MEMBERSHIP_HPP_

#include "ivp/closure.hpp"
#include "ivp/order.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ivp {

constexpr std::uint64_t kDefaultResidueBudget = 1000000;

/* Residue budget from the IVP_BUDGET environment variable, or the default. */
std::uint64_t residue_budget_from_env();

struct FiniteMembership {
    bool member = true;
    std::optional<std::size_t> failing_index; // into S
    AlgebraElement failing_value;             // f(S[failing_index])
};

/* f in Int_Q(S, A): f(s) in A for every s in S. */
FiniteMembership int_member_finite(const ZOrder& a, const std::vector<AlgebraElement>& s, const RationalPolynomial& f);

struct OrderMembership {
    bool member = true;
    std::optional<IntVector> failing_point; // some a in A with f(a) not in A
    std::uint64_t residues_checked = 0;
    unsigned failing_depth = 0; // int_member_composite: first j with outer^j(inner) failing
};

/* Number of residues int_member_order visits for f: writing f = g/d with g
 * integral, sum over prime powers q^k || d of q^(k * dim A). Saturates at
 * UINT64_MAX. */
std::uint64_t residue_count(const ZOrder& a, const RationalPolynomial& f);

/* f in Int_Q(A). With f = g/d, g(a) mod q^k A depends only on a mod q^k A
 * for each q^k || d, so the check runs over the residues of A/q^k A (the
 * basis of A is its HNF, so these are the boxes [0, q^k)^dim). Throws
 * BudgetExceeded when residue_count exceeds `budget`. */
OrderMembership int_member_order(const ZOrder& a, const RationalPolynomial& f,
                                 std::uint64_t budget = kDefaultResidueBudget);

/* Number of residues int_member_composite visits. */
std::uint64_t composite_residue_count(const ZOrder& a, const RationalPolynomial& inner,
                                      const RationalPolynomial& outer, int depth = 1);

/* outer^j(inner(X)) in Int_Q(A) for j = 1..depth, given inner in Int_Q(A).
 * Writing outer = G/m and q^k || m, the value outer^j(inner(a)) is known
 * modulo q^(k*(depth-j)) A once inner(a) is known modulo q^(k*depth) A,
 * which depends only on a mod q^(k*depth+w) A where q^w || den(inner). Only
 * those residues are visited; the coefficients of the iterates are never
 * formed. Throws PreconditionFailed if a visited residue shows that inner is
 * not integer valued, BudgetExceeded as above. */
OrderMembership int_member_composite(const ZOrder& a, const RationalPolynomial& inner, const RationalPolynomial& outer,
                                     std::uint64_t budget = kDefaultResidueBudget, int depth = 1);

enum class PointwiseReason { Closed, NotReducedSubalgebra, NotMaximal };

struct PointwiseResult {
    bool closed = false;
    PointwiseReason reason = PointwiseReason::Closed;
    RationalPolynomial minpoly;            // mu_a
    IntegerLattice intersection;           // A cap Q[a], in A's coordinates
    std::optional<AlgebraElement> witness; // integral over Z, in Q[a], not in A
    linalg::RatMatrix integral_closure;    // basis of the integral closure of Z in Q[a] (reduced case)
};

/* Decides whether A cap Q[a] is integrally closed, i.e. equals the
 * integral closure of Z in Q[a]. Requires a in A. */
PointwiseResult pointwise_integrally_closed(const ZOrder& a, const AlgebraElement& x);

struct RamificationProfile {
    Integer p;
    std::vector<std::pair<int, int>> primes; // (e, f) per prime above p
    std::vector<int> ram_indices;            // E_p, sorted, distinct
    std::vector<int> residue_degrees;        // F_p, sorted, distinct
    int e_max = 1, f_max = 1;
    Integer s, r; // s = e_max!, r = p^(f_max!)
    std::optional<AlgebraElement> generator;
    RationalPolynomial defining_poly; // mu of the generator

    int field_degree() const;
};

/* Ramification data of p in a maximal order O_F of a number field,
 * by Kummer-Dedekind on a primitive element whose equation order has index
 * prime to p. Throws IndexDivisible when the primitive-element search finds
 * no such element, PreconditionFailed when O_F is not p-maximal. */
RamificationProfile ramification_profile(const ZOrder& maximal, const Integer& p);

/* Profile of a single prime with ramification index e and residue degree f. */
RamificationProfile profile_from_ef(const Integer& p, int e, int f);

/* (f^r - f)^s / p */
RationalPolynomial pruefer_transform(const RationalPolynomial& f, const RamificationProfile& prof);

/* f_0 = f^s, f_k = f_{k-1} (f_{k-1}^(r-1) - 1)^s / p; returns f_0..f_kmax. */
std::vector<RationalPolynomial> transform_sequence(const RationalPolynomial& f, const RamificationProfile& prof,
                                                   int k_max);

/* The outer maps of the two transforms, as polynomials in Y:
 * (Y^r - Y)^s / p and Y (Y^(r-1) - 1)^s / p. */
RationalPolynomial pruefer_outer(const RamificationProfile& prof);
RationalPolynomial sequence_outer(const RamificationProfile& prof);

/* Some a in A with a^2 in p^2 A and a not in pA, searched over coefficient
 * shells of max-norm 1..p, then widened once to 2p. nullopt for commutative
 * A or when the search finds nothing. */
std::optional<AlgebraElement> nilpotent_witness(const ZOrder& a, const Integer& p);

} // namespace ivp

#endif
