#include "ivp/closure.hpp"

#include "ivp/error.hpp"
#include "ivp/factor.hpp"

namespace ivp {

IntegralityVerdict is_integral(const ZOrder& a, const AlgebraElement& b)
{
    IntegralityVerdict v;
    v.element = b;
    v.minpoly = minimal_polynomial(a, b);
    v.integral = v.minpoly.has_integer_coefficients();
    v.in_A = lattice_member(IntegerLattice::standard(a.dim()), b.coords);
    return v;
}

namespace {

void require_commutative(const ZOrder& o)
{
    if (!is_commutative(o).commutative)
        throw Error(ErrorCode::NotCommutative, "round 2 needs a commutative order");
}

/* Basis of {x in F_p^r : x * m = 0 (mod p)}, entries in [0, p). */
linalg::IntMatrix left_kernel_mod(const linalg::IntMatrix& m, const Integer& p)
{
    std::size_t r = m.size(), c = r ? m[0].size() : 0;
    /* Row reduce the transpose: columns of m are the equations. */
    linalg::IntMatrix a(c, IntVector(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            mpz_fdiv_r(a[j][i].get_mpz_t(), m[i][j].get_mpz_t(), p.get_mpz_t());
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    Integer inv, f;
    for (std::size_t col = 0; col < r && row < c; ++col) {
        std::size_t k = row;
        while (k < c && a[k][col] == 0)
            ++k;
        if (k == c)
            continue;
        std::swap(a[row], a[k]);
        mpz_invert(inv.get_mpz_t(), a[row][col].get_mpz_t(), p.get_mpz_t());
        for (auto& x : a[row]) {
            x *= inv;
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
        }
        for (std::size_t i = 0; i < c; ++i) {
            if (i == row || a[i][col] == 0)
                continue;
            f = a[i][col];
            for (std::size_t j = 0; j < r; ++j) {
                a[i][j] -= f * a[row][j];
                mpz_fdiv_r(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), p.get_mpz_t());
            }
        }
        piv.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(r, false);
    for (auto q : piv)
        is_pivot[q] = true;
    linalg::IntMatrix ker;
    for (std::size_t fr = 0; fr < r; ++fr) {
        if (is_pivot[fr])
            continue;
        IntVector v(r, 0);
        v[fr] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) {
            Integer x = -a[k][fr];
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
            v[piv[k]] = x;
        }
        ker.push_back(std::move(v));
    }
    return ker;
}

IntVector pow_mod(const ZOrder& o, IntVector x, Integer e, const Integer& m)
{
    IntVector result = o.one_coords();
    for (auto& v : result)
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            result = o.mul_mod(result, x, m);
        e >>= 1;
        if (e > 0)
            x = o.mul_mod(x, x, m);
    }
    return result;
}

/* Rational HNF basis rows of an order given by spanning rows, rebuilt as
 * an EmbeddedOrder of `ambient`. */
EmbeddedOrder canonical_order(const ZOrder& ambient, const linalg::RatMatrix& rows)
{
    RationalLattice lat = hnf_reduce_rational(rows, ambient.dim());
    return order_from_lattice(ambient, lat.basis(), ambient.one());
}

Integer index_of(const linalg::RatMatrix& basis)
{
    /* [L : Z^n] for a full-rank rational lattice L containing Z^n is 1/|det|. */
    Rational det = linalg::determinant(basis);
    Rational idx = 1 / abs(det);
    if (!is_integral(idx))
        throw Error(ErrorCode::InternalError, "overorder index is not an integer");
    return idx.get_num();
}

} // namespace

IntegerLattice p_radical(const ZOrder& o, const Integer& p)
{
    require_commutative(o);
    std::size_t n = o.dim();
    Integer q = p;
    while (q < n)
        q *= p;
    linalg::IntMatrix frob;
    for (std::size_t j = 0; j < n; ++j) {
        IntVector b(n, 0);
        b[j] = 1;
        frob.push_back(pow_mod(o, b, q, p));
    }
    linalg::IntMatrix rows = left_kernel_mod(frob, p);
    for (std::size_t j = 0; j < n; ++j) {
        IntVector v(n, 0);
        v[j] = p;
        rows.push_back(std::move(v));
    }
    return hnf_reduce(rows, n);
}

EmbeddedOrder ring_of_multipliers(const ZOrder& o, const IntegerLattice& ideal)
{
    require_commutative(o);
    std::size_t n = o.dim();
    if (!ideal.full_rank())
        throw Error(ErrorCode::PreconditionFailed, "ring of multipliers needs a full-rank ideal");
    linalg::RatMatrix v = linalg::to_rational(ideal.basis());
    linalg::RatMatrix v_inv = linalg::inverse(v);
    /* x v_k expressed in the ideal basis is x * (R_k V^-1); every column of
     * every R_k V^-1 is a functional that must be integral on x. */
    linalg::RatMatrix functionals;
    for (std::size_t k = 0; k < n; ++k) {
        linalg::RatMatrix ck = linalg::multiply(o.right_regular(AlgebraElement(v[k])), v_inv);
        for (auto& col : linalg::transpose(ck))
            functionals.push_back(std::move(col));
    }
    RationalLattice w = hnf_reduce_rational(functionals, n);
    if (!w.numerator.full_rank())
        throw Error(ErrorCode::InternalError, "degenerate multiplier functionals");
    /* {x : x W^T integral} has basis the rows of (W^T)^-1. */
    linalg::RatMatrix dual = linalg::inverse(linalg::transpose(w.basis()));
    return canonical_order(o, dual);
}

bool is_p_maximal(const ZOrder& o, const Integer& p)
{
    EmbeddedOrder m = ring_of_multipliers(o, p_radical(o, p));
    return index_of(m.basis) == 1;
}

MaximalOrderResult maximal_order(const ZOrder& o)
{
    require_commutative(o);
    std::size_t n = o.dim();
    Integer disc = discriminant(o);
    if (disc == 0)
        throw Error(ErrorCode::PreconditionFailed, "discriminant is zero: the algebra is not reduced");

    MaximalOrderResult res{canonical_order(o, linalg::identity(n)), 1, disc, disc, {}};
    linalg::RatMatrix basis = linalg::identity(n); // current order, in o's coordinates
    ZOrder cur = o;
    for (const auto& [p, e] : factor_integer(disc)) {
        if (e < 2)
            continue;
        res.primes.push_back(p);
        while (true) {
            EmbeddedOrder next = ring_of_multipliers(cur, p_radical(cur, p));
            if (index_of(next.basis) == 1)
                break;
            basis = linalg::multiply(next.basis, basis);
            cur = next.order;
        }
    }
    res.order = canonical_order(o, basis);
    res.index = index_of(res.order.basis);
    res.disc_maximal = discriminant(res.order.order);
    if (res.disc_maximal * res.index * res.index != disc)
        throw Error(ErrorCode::InternalError, "discriminant relation violated");
    return res;
}

ClosednessResult is_integrally_closed_order(const ZOrder& o)
{
    ClosednessResult r{false, std::nullopt, maximal_order(o)};
    r.closed = r.maximal.index == 1;
    if (!r.closed)
        for (const auto& row : r.maximal.order.basis)
            if (!is_integral(row)) {
                r.witness = AlgebraElement(row);
                break;
            }
    return r;
}

} // namespace ivp
