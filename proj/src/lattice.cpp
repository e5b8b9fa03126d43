#include "ivp/lattice.hpp"

#include "ivp/error.hpp"

#include <utility>

namespace ivp {

IntegerLattice::IntegerLattice(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

IntegerLattice IntegerLattice::standard(std::size_t n)
{
    linalg::IntMatrix rows(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        rows[i][i] = 1;
    return hnf_reduce(rows, n);
}

Integer IntegerLattice::index() const
{
    if (!full_rank())
        throw Error(ErrorCode::PreconditionFailed, "index of a lattice of deficient rank");
    Integer idx = 1;
    for (std::size_t k = 0; k < basis_.size(); ++k)
        idx *= basis_[k][pivots_[k]];
    return idx;
}

std::optional<IntVector> IntegerLattice::coordinates(const RatVector& v) const
{
    if (v.size() != ambient_dim_)
        throw Error(ErrorCode::DimensionMismatch, "lattice membership");
    if (!is_integral(v))
        return std::nullopt;
    IntVector w = to_integer(v);
    IntVector coords(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Integer& piv = basis_[k][pivots_[k]];
        if (!mpz_divisible_p(w[pivots_[k]].get_mpz_t(), piv.get_mpz_t()))
            return std::nullopt;
        coords[k] = w[pivots_[k]] / piv;
        if (coords[k] == 0)
            continue;
        for (std::size_t j = pivots_[k]; j < ambient_dim_; ++j)
            w[j] -= coords[k] * basis_[k][j];
    }
    if (!is_zero(w))
        return std::nullopt;
    return coords;
}

bool IntegerLattice::contains(const RatVector& v) const { return coordinates(v).has_value(); }

bool IntegerLattice::contains(const IntVector& v) const { return contains(ivp::to_rational(v)); }

bool IntegerLattice::contains(const IntegerLattice& other) const
{
    if (other.ambient_dim_ != ambient_dim_)
        throw Error(ErrorCode::DimensionMismatch, "lattice containment");
    for (const auto& row : other.basis_)
        if (!contains(row))
            return false;
    return true;
}

IntegerLattice IntegerLattice::scaled(const Integer& m) const
{
    linalg::IntMatrix rows = basis_;
    for (auto& row : rows)
        for (auto& x : row)
            x *= m;
    return hnf_reduce(rows, ambient_dim_);
}

IntegerLattice IntegerLattice::operator+(const IntegerLattice& other) const
{
    if (other.ambient_dim_ != ambient_dim_)
        throw Error(ErrorCode::DimensionMismatch, "lattice sum");
    linalg::IntMatrix rows = basis_;
    rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
    return hnf_reduce(rows, ambient_dim_);
}

IntegerLattice hnf_reduce(const linalg::IntMatrix& rows)
{
    if (rows.empty())
        throw Error(ErrorCode::DimensionMismatch, "hnf_reduce needs at least one row to know the dimension");
    return hnf_reduce(rows, rows[0].size());
}

IntegerLattice hnf_reduce(const linalg::IntMatrix& rows, std::size_t n)
{
    linalg::IntMatrix m;
    m.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "rows of unequal length");
        if (!is_zero(row))
            m.push_back(row);
    }

    IntegerLattice out(n);
    std::size_t r = 0;
    Integer q;
    for (std::size_t c = 0; c < n && r < m.size(); ++c) {
        /* Euclid on column c among the rows r.. */
        while (true) {
            std::size_t best = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][c] != 0 && (best == m.size() || abs(m[i][c]) < abs(m[best][c])))
                    best = i;
            if (best == m.size())
                break;
            std::swap(m[r], m[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][c] == 0)
                    continue;
                mpz_tdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
                for (std::size_t j = c; j < n; ++j)
                    m[i][j] -= q * m[r][j];
                if (m[i][c] != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (m[r][c] == 0)
            continue;
        if (m[r][c] < 0)
            for (std::size_t j = c; j < n; ++j)
                m[r][j] = -m[r][j];
        for (std::size_t i = 0; i < r; ++i) {
            if (m[i][c] == 0)
                continue;
            mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
            if (q == 0)
                continue;
            for (std::size_t j = c; j < n; ++j)
                m[i][j] -= q * m[r][j];
        }
        out.pivots_.push_back(c);
        ++r;
    }
    m.resize(r);
    out.basis_ = std::move(m);
    return out;
}

linalg::RatMatrix RationalLattice::basis() const
{
    linalg::RatMatrix rows;
    for (const auto& row : numerator.basis()) {
        RatVector v;
        for (const auto& x : row)
            v.emplace_back(Rational(x, denominator));
        for (auto& x : v)
            x.canonicalize();
        rows.push_back(std::move(v));
    }
    return rows;
}

bool RationalLattice::contains(const RatVector& v) const
{
    RatVector w = v;
    for (auto& x : w)
        x *= denominator;
    return numerator.contains(w);
}

bool RationalLattice::operator==(const RationalLattice& o) const
{
    return denominator == o.denominator && numerator == o.numerator;
}

RationalLattice hnf_reduce_rational(const linalg::RatMatrix& rows, std::size_t n)
{
    Integer d = 1;
    for (const auto& row : rows) {
        if (row.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "rows of unequal length");
        Integer rd = common_denominator(row);
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), rd.get_mpz_t());
    }
    linalg::IntMatrix scaled;
    for (const auto& row : rows) {
        IntVector v;
        for (const auto& x : row)
            v.push_back(Rational(x * d).get_num());
        scaled.push_back(std::move(v));
    }
    IntegerLattice lat = hnf_reduce(scaled, n);
    Integer g = d;
    for (const auto& row : lat.basis())
        for (const auto& x : row)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g != 1) {
        for (auto& row : scaled)
            for (auto& x : row)
                x /= g;
        lat = hnf_reduce(scaled, n);
        d /= g;
    }
    return RationalLattice{std::move(lat), d};
}

bool lattice_member(const IntegerLattice& lattice, const RatVector& v) { return lattice.contains(v); }

linalg::IntMatrix integer_left_kernel(const linalg::IntMatrix& m)
{
    std::size_t r = m.size();
    if (r == 0)
        return {};
    std::size_t c = m[0].size();
    linalg::IntMatrix aug(r, IntVector(c + r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        if (m[i].size() != c)
            throw Error(ErrorCode::DimensionMismatch, "integer_left_kernel");
        for (std::size_t j = 0; j < c; ++j)
            aug[i][j] = m[i][j];
        aug[i][c + i] = 1;
    }
    IntegerLattice h = hnf_reduce(aug, c + r);
    linalg::IntMatrix ker;
    for (std::size_t k = 0; k < h.rank(); ++k)
        if (h.pivots()[k] >= c)
            ker.emplace_back(h.basis()[k].begin() + static_cast<std::ptrdiff_t>(c), h.basis()[k].end());
    return ker;
}

IntegerLattice lattice_intersect(const IntegerLattice& lattice, const linalg::RatMatrix& subspace)
{
    std::size_t n = lattice.ambient_dim();
    for (const auto& row : subspace)
        if (row.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "lattice_intersect");
    if (linalg::rank(subspace) == 0 || lattice.rank() == 0)
        return IntegerLattice(n);
    linalg::RatMatrix complement = linalg::right_kernel(subspace, n);
    if (complement.empty())
        return lattice;
    /* z * basis lies in the subspace iff it is orthogonal to the complement. */
    const auto& basis = lattice.basis();
    linalg::IntMatrix pairing(basis.size(), IntVector(complement.size(), 0));
    for (std::size_t j = 0; j < complement.size(); ++j) {
        Integer d = common_denominator(complement[j]);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Rational s = 0;
            for (std::size_t k = 0; k < n; ++k)
                s += basis[i][k] * complement[j][k];
            pairing[i][j] = Rational(s * d).get_num();
        }
    }
    linalg::IntMatrix ker = integer_left_kernel(pairing);
    linalg::IntMatrix rows;
    for (const auto& z : ker) {
        IntVector v(n, 0);
        for (std::size_t i = 0; i < z.size(); ++i)
            for (std::size_t k = 0; k < n; ++k)
                v[k] += z[i] * basis[i][k];
        rows.push_back(std::move(v));
    }
    return hnf_reduce(rows, n);
}

} // namespace ivp
