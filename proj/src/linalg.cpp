#include "ivp/linalg.hpp"

#include "ivp/error.hpp"

#include <utility>

namespace ivp::linalg {

RatMatrix identity(std::size_t n)
{
    RatMatrix m(n, RatVector(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r;
    r.reserve(m.size());
    for (const auto& row : m)
        r.push_back(ivp::to_rational(row));
    return r;
}

std::size_t columns(const RatMatrix& m) { return m.empty() ? 0 : m[0].size(); }

RatMatrix transpose(const RatMatrix& m)
{
    std::size_t rows = m.size(), cols = columns(m);
    RatMatrix t(cols, RatVector(rows));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            t[j][i] = m[i][j];
    return t;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b)
{
    if (columns(a) != b.size())
        throw Error(ErrorCode::DimensionMismatch, "matrix product");
    std::size_t n = a.size(), k = b.size(), m = columns(b);
    RatMatrix c(n, RatVector(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0)
                continue;
            for (std::size_t j = 0; j < m; ++j)
                c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

RatVector apply(const RatVector& v, const RatMatrix& m)
{
    if (v.size() != m.size())
        throw Error(ErrorCode::DimensionMismatch, "vector-matrix product");
    RatVector r(columns(m), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        for (std::size_t j = 0; j < r.size(); ++j)
            r[j] += v[i] * m[i][j];
    }
    return r;
}

RatVector apply(const RatMatrix& m, const RatVector& v)
{
    RatVector r(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != v.size())
            throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
        for (std::size_t j = 0; j < v.size(); ++j)
            r[i] += m[i][j] * v[j];
    }
    return r;
}

std::vector<std::size_t> rref(RatMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t rows = m.size(), cols = columns(m), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[r], m[p]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j)
            m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

RatMatrix row_space(RatMatrix m)
{
    auto piv = rref(m);
    m.resize(piv.size());
    return m;
}

RatMatrix right_kernel(const RatMatrix& m, std::size_t cols)
{
    RatMatrix a = m;
    for (const auto& row : a)
        if (row.size() != cols)
            throw Error(ErrorCode::DimensionMismatch, "right_kernel");
    auto piv = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : piv)
        is_pivot[c] = true;
    RatMatrix ker;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        RatVector v(cols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r)
            v[piv[r]] = -a[r][free];
        ker.push_back(std::move(v));
    }
    return ker;
}

RatMatrix left_kernel(const RatMatrix& m) { return right_kernel(transpose(m), m.size()); }

std::optional<RatVector> solve_left(const RatMatrix& rows, const RatVector& v)
{
    /* x * rows = v  <=>  rows^T x^T = v^T; solve by rref of [rows^T | v]. */
    std::size_t k = rows.size(), n = v.size();
    RatMatrix aug(n, RatVector(k + 1));
    for (std::size_t i = 0; i < k; ++i) {
        if (rows[i].size() != n)
            throw Error(ErrorCode::DimensionMismatch, "solve_left");
        for (std::size_t j = 0; j < n; ++j)
            aug[j][i] = rows[i][j];
    }
    for (std::size_t j = 0; j < n; ++j)
        aug[j][k] = v[j];
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == k)
        return std::nullopt;
    RatVector x(k, 0);
    for (std::size_t r = 0; r < piv.size(); ++r)
        x[piv[r]] = aug[r][k];
    return x;
}

Rational determinant(RatMatrix m)
{
    std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[c].size() != n)
            throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
        std::size_t p = c;
        while (p < n && m[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0)
                continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j)
                m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

Integer determinant(const IntMatrix& src)
{
    IntMatrix m = src;
    std::size_t n = m.size();
    if (n == 0)
        return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

RatMatrix inverse(const RatMatrix& m)
{
    std::size_t n = m.size();
    RatMatrix aug(n, RatVector(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n)
            throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1)
        throw Error(ErrorCode::PreconditionFailed, "singular matrix");
    RatMatrix inv(n, RatVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i][j] = aug[i][n + j];
    return inv;
}

} // namespace ivp::linalg
