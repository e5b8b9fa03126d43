#include "ivp/modpoly.hpp"

#include "ivp/error.hpp"

#include <algorithm>

namespace ivp::modp {

namespace {

void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

} // namespace

Ring::Ring(Integer modulus) : m_(std::move(modulus))
{
    if (m_ < 2)
        throw Error(ErrorCode::PreconditionFailed, "modulus must be at least 2");
}

Integer Ring::reduce(const Integer& c) const
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m_.get_mpz_t());
    return r;
}

Poly Ring::reduce(const IntVector& f) const
{
    Poly r;
    r.reserve(f.size());
    for (const auto& c : f)
        r.push_back(reduce(c));
    trim(r);
    return r;
}

Integer Ring::symmetric(const Integer& c) const
{
    Integer r = reduce(c);
    if (2 * r > m_)
        r -= m_;
    return r;
}

Poly Ring::symmetric(const Poly& f) const
{
    Poly r;
    for (const auto& c : f)
        r.push_back(symmetric(c));
    trim(r);
    return r;
}

Poly Ring::add(const Poly& a, const Poly& b) const
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size())
            r[i] += a[i];
        if (i < b.size())
            r[i] += b[i];
        if (r[i] >= m_)
            r[i] -= m_;
    }
    trim(r);
    return r;
}

Poly Ring::sub(const Poly& a, const Poly& b) const
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size())
            r[i] += a[i];
        if (i < b.size())
            r[i] -= b[i];
        if (r[i] < 0)
            r[i] += m_;
    }
    trim(r);
    return r;
}

Poly Ring::mul(const Poly& a, const Poly& b) const
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    for (auto& c : r)
        c = reduce(c);
    trim(r);
    return r;
}

Poly Ring::scale(const Poly& a, const Integer& c) const
{
    Poly r;
    for (const auto& x : a)
        r.push_back(reduce(x * c));
    trim(r);
    return r;
}

Integer Ring::inverse(const Integer& c) const
{
    Integer r;
    Integer cc = reduce(c);
    if (mpz_invert(r.get_mpz_t(), cc.get_mpz_t(), m_.get_mpz_t()) == 0)
        throw Error(ErrorCode::PreconditionFailed, "non-invertible leading coefficient");
    return r;
}

std::pair<Poly, Poly> Ring::divmod(const Poly& a, const Poly& b) const
{
    if (b.empty())
        throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial mod m");
    Poly r = a;
    int db = degree(b);
    if (degree(a) < db)
        return {{}, r};
    Integer inv = inverse(b.back());
    Poly q(static_cast<std::size_t>(degree(a) - db) + 1, 0);
    for (int k = degree(a); k >= db; --k) {
        Integer c = reduce(r[static_cast<std::size_t>(k)] * inv);
        if (c == 0)
            continue;
        q[static_cast<std::size_t>(k - db)] = c;
        for (int j = 0; j <= db; ++j) {
            auto& t = r[static_cast<std::size_t>(k - db + j)];
            t = reduce(t - c * b[static_cast<std::size_t>(j)]);
        }
    }
    trim(q);
    trim(r);
    return {q, r};
}

Poly Ring::powmod(Poly base, Integer e, const Poly& modulus) const
{
    Poly result = rem(Poly{1}, modulus);
    base = rem(base, modulus);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            result = rem(mul(result, base), modulus);
        e >>= 1;
        if (e > 0)
            base = rem(mul(base, base), modulus);
    }
    return result;
}

Poly Ring::derivative(const Poly& a) const
{
    Poly r;
    for (std::size_t k = 1; k < a.size(); ++k)
        r.push_back(reduce(a[k] * static_cast<unsigned long>(k)));
    trim(r);
    return r;
}

Poly Ring::monic(const Poly& a) const
{
    if (a.empty())
        return a;
    return scale(a, inverse(a.back()));
}

Poly Ring::gcd(Poly a, Poly b) const
{
    while (!b.empty()) {
        Poly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

void Ring::xgcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t) const
{
    Poly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) {
        g = r0;
        s = s0;
        t = t0;
        return;
    }
    Integer inv = inverse(r0.back());
    g = scale(r0, inv);
    s = scale(s0, inv);
    t = scale(t0, inv);
}

namespace {

/* Squarefree decomposition over F_p of a monic polynomial. */
void squarefree(const Ring& R, unsigned long p, const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out)
{
    if (degree(f) < 1)
        return;
    Poly c = R.gcd(f, R.derivative(f));
    Poly w = R.divmod(f, c).first;
    int i = 1;
    while (degree(w) > 0) {
        Poly y = R.gcd(w, c);
        Poly z = R.divmod(w, y).first;
        if (degree(z) > 0)
            out.emplace_back(R.monic(z), i * mult);
        ++i;
        w = std::move(y);
        c = R.divmod(c, w).first;
    }
    if (degree(c) > 0) {
        /* c is a p-th power: its p-th root has coefficient c[k*p] at X^k. */
        Poly root;
        for (std::size_t k = 0; k < c.size(); k += p)
            root.push_back(c[k]);
        squarefree(R, p, R.monic(root), mult * static_cast<int>(p), out);
    }
}

std::vector<std::pair<Poly, int>> distinct_degree(const Ring& R, unsigned long p, Poly g)
{
    std::vector<std::pair<Poly, int>> out;
    Poly x{0, 1};
    Poly h = R.rem(x, g);
    int i = 1;
    while (degree(g) >= 2 * i) {
        h = R.powmod(h, Integer(p), g);
        Poly d = R.gcd(g, R.sub(h, x));
        if (degree(d) > 0) {
            out.emplace_back(d, i);
            g = R.divmod(g, d).first;
            h = R.rem(h, g);
        }
        ++i;
    }
    if (degree(g) > 0)
        out.emplace_back(R.monic(g), degree(g));
    return out;
}

void equal_degree(const Ring& R, unsigned long p, const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out)
{
    if (degree(g) == d) {
        out.push_back(g);
        return;
    }
    std::uniform_int_distribution<unsigned long> coef(0, p - 1);
    while (true) {
        Poly a;
        for (int k = 0; k < degree(g); ++k)
            a.emplace_back(coef(rng));
        while (!a.empty() && a.back() == 0)
            a.pop_back();
        if (degree(a) < 1)
            continue;
        Poly b;
        if (p == 2) {
            Poly term = a;
            b = a;
            for (int k = 1; k < d; ++k) {
                term = R.rem(R.mul(term, term), g);
                b = R.add(b, term);
            }
        } else {
            Integer e = (ipow(Integer(p), static_cast<unsigned long>(d)) - 1) / 2;
            b = R.sub(R.powmod(a, e, g), Poly{1});
        }
        Poly h = R.gcd(g, b);
        if (degree(h) > 0 && degree(h) < degree(g)) {
            equal_degree(R, p, h, d, rng, out);
            equal_degree(R, p, R.divmod(g, h).first, d, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f, unsigned long p, std::mt19937_64& rng)
{
    Ring R{Integer(p)};
    Poly g = R.reduce(f);
    if (g.empty())
        throw Error(ErrorCode::ZeroPolynomial, "factor mod p of a polynomial vanishing mod p");
    g = R.monic(g);
    std::vector<std::pair<Poly, int>> sqf;
    squarefree(R, p, g, 1, sqf);
    std::vector<std::pair<Poly, int>> out;
    for (const auto& [part, mult] : sqf)
        for (const auto& [block, d] : distinct_degree(R, p, part)) {
            std::vector<Poly> irr;
            equal_degree(R, p, block, d, rng, irr);
            for (auto& q : irr)
                out.emplace_back(std::move(q), mult);
        }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size())
            return a.first.size() < b.first.size();
        return std::lexicographical_compare(a.first.rbegin(), a.first.rend(), b.first.rbegin(), b.first.rend());
    });
    return out;
}

std::vector<std::pair<Poly, int>> factor(const Poly& f, unsigned long p)
{
    std::mt19937_64 rng(0x5eed);
    return factor(f, p, rng);
}

} // namespace ivp::modp
