#include "ivp/decomposition.hpp"

#include "ivp/error.hpp"
#include "ivp/factor.hpp"

namespace ivp {

namespace {

long coefficient_at(int k)
{
    /* 0, 1, -1, 2, -2, ... */
    return k == 0 ? 0 : (k % 2 ? (k + 1) / 2 : -(k / 2));
}

void require_commutative(const ZOrder& a)
{
    if (!is_commutative(a).commutative)
        throw Error(ErrorCode::NotCommutative, "decomposition needs a commutative algebra");
}

} // namespace

bool for_each_primitive_candidate(const ZOrder& a, int max_norm,
                                  const std::function<bool(const AlgebraElement&, const RationalPolynomial&)>& accept)
{
    std::size_t n = a.dim();
    for (int norm = 1; norm <= max_norm; ++norm) {
        int width = 2 * norm + 1;
        std::vector<int> digit(n, 0);
        while (true) {
            bool on_shell = false;
            IntVector c(n);
            for (std::size_t i = 0; i < n; ++i) {
                long v = coefficient_at(digit[i]);
                c[i] = v;
                if (v == norm || v == -norm)
                    on_shell = true;
            }
            if (on_shell) {
                AlgebraElement x(c);
                RationalPolynomial mu = minimal_polynomial(a, x);
                if (static_cast<std::size_t>(mu.degree()) == n && accept(x, mu))
                    return true;
            }
            std::size_t i = 0;
            while (i < n && ++digit[i] == width)
                digit[i++] = 0;
            if (i == n)
                break;
        }
    }
    return false;
}

AlgebraElement find_primitive_element(const ZOrder& a, int max_norm)
{
    require_commutative(a);
    std::optional<AlgebraElement> found;
    for_each_primitive_candidate(a, max_norm, [&](const AlgebraElement& x, const RationalPolynomial&) {
        found = x;
        return true;
    });
    if (!found)
        throw Error(ErrorCode::SearchExhausted,
                    "no primitive element with coefficients up to " + std::to_string(max_norm));
    return *found;
}

Decomposition decompose(const ZOrder& a)
{
    require_commutative(a);
    Decomposition dec;
    dec.primitive = find_primitive_element(a);
    dec.primitive_minpoly = minimal_polynomial(a, dec.primitive);
    const RationalPolynomial& mu = dec.primitive_minpoly;
    if (!is_squarefree(mu))
        throw Error(ErrorCode::NotReduced, "minimal polynomial " + mu.to_string() + " is not squarefree");

    RationalFactorization fac = poly_factor_q(mu);
    for (const auto& [g, mult] : fac.factors) {
        RationalPolynomial cofactor = mu / g;
        Bezout bz = extended_gcd(g, cofactor);
        /* E = t*cofactor is 1 mod g and 0 mod the other factors. */
        RationalPolynomial e_poly = (bz.t * cofactor) % mu;
        AlgebraElement e = evaluate(a, e_poly, dec.primitive);
        linalg::RatMatrix span;
        for (std::size_t j = 0; j < a.dim(); ++j)
            span.push_back(a.mul(e, a.basis_element(j)).coords);
        dec.idempotents.push_back(e);
        dec.component_bases.push_back(linalg::row_space(span));
        dec.component_minpolys.push_back(g);
    }
    return dec;
}

IdempotentCheck idempotents_in_A(const ZOrder& a, const Decomposition& dec)
{
    IntegerLattice lat = IntegerLattice::standard(a.dim());
    for (std::size_t i = 0; i < dec.size(); ++i)
        if (!lattice_member(lat, dec.idempotents[i].coords))
            return {false, i};
    return {};
}

EmbeddedOrder component_order(const ZOrder& a, const Decomposition& dec, std::size_t i)
{
    const AlgebraElement& e = dec.idempotents.at(i);
    if (!a.contains(e))
        throw Error(ErrorCode::PreconditionFailed, "idempotent " + e.to_string() + " is not in A");
    linalg::IntMatrix rows;
    for (std::size_t j = 0; j < a.dim(); ++j)
        rows.push_back(to_integer(a.mul(a.basis_element(j), e).coords));
    IntegerLattice lat = hnf_reduce(rows, a.dim());
    return order_from_lattice(a, linalg::to_rational(lat.basis()), e);
}

} // namespace ivp
