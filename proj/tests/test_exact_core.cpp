#include "support.hpp"

#include "ivp/error.hpp"
#include "ivp/factor.hpp"
#include "ivp/lattice.hpp"
#include "ivp/modpoly.hpp"
#include "ivp/polynomial.hpp"

#include <doctest.h>

#include <functional>
#include <map>
#include <set>

using namespace ivp;
using ivp::testing::uniform;

namespace {

/* gcd of all r x r minors of m (rank r), by brute force. */
Integer minor_gcd(const linalg::IntMatrix& m, std::size_t r)
{
    std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
    Integer g = 0;
    std::vector<std::size_t> ri, ci;
    std::function<void(std::size_t)> pick_cols;
    std::function<void(std::size_t)> pick_rows = [&](std::size_t start) {
        if (ri.size() == r) {
            pick_cols(0);
            return;
        }
        for (std::size_t i = start; i < rows; ++i) {
            ri.push_back(i);
            pick_rows(i + 1);
            ri.pop_back();
        }
    };
    pick_cols = [&](std::size_t start) {
        if (ci.size() == r) {
            linalg::IntMatrix sub;
            for (auto i : ri) {
                IntVector row;
                for (auto j : ci)
                    row.push_back(m[i][j]);
                sub.push_back(row);
            }
            Integer d = linalg::determinant(sub);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            return;
        }
        for (std::size_t j = start; j < cols; ++j) {
            ci.push_back(j);
            pick_cols(j + 1);
            ci.pop_back();
        }
    };
    pick_rows(0);
    return g;
}

linalg::IntMatrix random_rows(std::mt19937_64& rng, std::size_t rows, std::size_t n, long bound)
{
    linalg::IntMatrix m(rows, IntVector(n));
    for (auto& row : m)
        for (auto& x : row)
            x = uniform(rng, -bound, bound);
    return m;
}

bool is_hnf(const IntegerLattice& l)
{
    const auto& b = l.basis();
    std::size_t last = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::size_t p = l.pivots()[i];
        if (i > 0 && p <= last)
            return false;
        last = p;
        if (b[i][p] <= 0)
            return false;
        for (std::size_t j = 0; j < p; ++j)
            if (b[i][j] != 0)
                return false;
        for (std::size_t k = 0; k < i; ++k)
            if (b[k][p] < 0 || b[k][p] >= b[i][p])
                return false;
    }
    return true;
}

} // namespace

TEST_SUITE("exact-core")
{
    TEST_CASE("rational parsing and formatting")
    {
        CHECK(parse_rational("-6/4") == Rational(-3, 2));
        CHECK(parse_rational(" 7 ") == 7);
        CHECK_THROWS_AS(parse_rational("1/0"), Error);
        CHECK_THROWS_AS(parse_rational("x"), Error);
        RatVector v = parse_rational_list("1/2, -3,0");
        REQUIRE(v.size() == 3);
        CHECK(v[0] == Rational(1, 2));
        CHECK(to_string(v) == "(1/2, -3, 0)");
        CHECK(fraction(3, -6) == Rational(-1, 2));
        CHECK(valuation(Integer(48), Integer(2)) == 4);
        CHECK(in_localization(Rational(3, 5), 2));
        CHECK_FALSE(in_localization(Rational(3, 4), 2));
        CHECK(common_denominator({Rational(1, 4), Rational(5, 6)}) == 12);
    }

    TEST_CASE("hnf of a small lattice")
    {
        IntegerLattice l = hnf_reduce({{2, 4}, {0, 6}, {4, 2}});
        CHECK(l.basis() == linalg::IntMatrix{{2, 4}, {0, 6}});
        CHECK(l.index() == 12);
        CHECK(l.contains(IntVector{2, 10}));
        CHECK_FALSE(l.contains(IntVector{4, 6}));
        CHECK_FALSE(l.contains(IntVector{1, 0}));
        CHECK_FALSE(l.contains(RatVector{Rational(2), Rational(1, 2)}));
    }

    TEST_CASE("hnf idempotent and span preserving, against minors and enumeration")
    {
        std::mt19937_64 rng(101);
        for (int trial = 0; trial < 150; ++trial) {
            std::size_t n = uniform(rng, 1, 5), rows = uniform(rng, 1, 6);
            linalg::IntMatrix m = random_rows(rng, rows, n, 9);
            IntegerLattice l = hnf_reduce(m, n);
            CHECK(is_hnf(l));
            CHECK(hnf_reduce(l.basis(), n) == l);
            CHECK(l.rank() == linalg::rank(linalg::to_rational(m)));
            for (const auto& row : m)
                CHECK(l.contains(row));
            if (l.rank() > 0)
                CHECK(minor_gcd(m, l.rank()) == minor_gcd(l.basis(), l.rank()));
            /* small combinations of the input stay inside, and the group law holds */
            for (int k = 0; k < 10; ++k) {
                IntVector v(n, 0), w(n, 0);
                for (const auto& row : m) {
                    long c = uniform(rng, -2, 2), d = uniform(rng, -2, 2);
                    for (std::size_t j = 0; j < n; ++j) {
                        v[j] += c * row[j];
                        w[j] += d * row[j];
                    }
                }
                IntVector s(n), neg(n);
                for (std::size_t j = 0; j < n; ++j) {
                    s[j] = v[j] + w[j];
                    neg[j] = -v[j];
                }
                CHECK(lattice_member(l, to_rational(v)));
                CHECK(lattice_member(l, to_rational(s)));
                CHECK(lattice_member(l, to_rational(neg)));
            }
        }
    }

    TEST_CASE("hnf membership agrees with brute-force span enumeration")
    {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t n = uniform(rng, 1, 3);
            linalg::IntMatrix m = random_rows(rng, n, n, 4);
            IntegerLattice l = hnf_reduce(m, n);
            /* all combinations with coefficients in [-6, 6], clipped to the box [-3, 3]^n */
            std::set<IntVector> span;
            std::vector<long> c(n, -6);
            while (true) {
                IntVector v(n, 0);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        v[j] += c[i] * m[i][j];
                bool in_box = true;
                for (const auto& x : v)
                    in_box = in_box && abs(x) <= 3;
                if (in_box)
                    span.insert(v);
                std::size_t i = 0;
                while (i < n && ++c[i] > 6)
                    c[i++] = -6;
                if (i == n)
                    break;
            }
            /* the enumeration is complete when m is invertible with a small inverse */
            linalg::RatMatrix inv = l.full_rank() ? linalg::inverse(linalg::to_rational(m)) : linalg::RatMatrix{};
            bool complete = l.full_rank();
            for (const auto& row : inv)
                for (const auto& x : row)
                    complete = complete && abs(x) * 3 * n <= 6;
            std::vector<long> p(n, -3);
            while (true) {
                IntVector v(p.begin(), p.end());
                bool member = l.contains(v);
                if (span.count(v))
                    CHECK(member);
                else if (complete)
                    CHECK_FALSE(member);
                std::size_t i = 0;
                while (i < n && ++p[i] > 3)
                    p[i++] = -3;
                if (i == n)
                    break;
            }
        }
    }

    TEST_CASE("lattice intersection with a subspace")
    {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t n = uniform(rng, 2, 4), k = uniform(rng, 1, n - 1);
            linalg::RatMatrix sub;
            for (std::size_t i = 0; i < k; ++i) {
                RatVector row;
                for (std::size_t j = 0; j < n; ++j)
                    row.push_back(fraction(uniform(rng, -5, 5), uniform(rng, 1, 3)));
                sub.push_back(row);
            }
            std::size_t r = linalg::rank(sub);
            IntegerLattice l = lattice_intersect(IntegerLattice::standard(n), sub);
            CHECK(l.rank() == r);
            for (const auto& row : l.basis())
                CHECK(linalg::solve_left(sub, to_rational(row)).has_value());
            if (r > 0)
                CHECK(minor_gcd(l.basis(), r) == 1); // saturated, hence all of Z^n cap V
            std::vector<long> p(n, -4);
            while (true) {
                IntVector v(p.begin(), p.end());
                if (linalg::solve_left(sub, to_rational(v)))
                    CHECK(l.contains(v));
                std::size_t i = 0;
                while (i < n && ++p[i] > 4)
                    p[i++] = -4;
                if (i == n)
                    break;
            }
        }
    }

    TEST_CASE("integer left kernel")
    {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 40; ++trial) {
            linalg::IntMatrix m = random_rows(rng, uniform(rng, 1, 5), uniform(rng, 1, 4), 6);
            linalg::IntMatrix ker = integer_left_kernel(m);
            CHECK(ker.size() == m.size() - linalg::rank(linalg::to_rational(m)));
            for (const auto& z : ker) {
                IntVector prod(m[0].size(), 0);
                for (std::size_t i = 0; i < m.size(); ++i)
                    for (std::size_t j = 0; j < prod.size(); ++j)
                        prod[j] += z[i] * m[i][j];
                CHECK(is_zero(prod));
            }
            if (!ker.empty())
                CHECK(minor_gcd(ker, ker.size()) == 1);
        }
    }

    TEST_CASE("linear algebra basics")
    {
        linalg::RatMatrix a{{2, 1}, {1, 1}};
        CHECK(linalg::multiply(a, linalg::inverse(a)) == linalg::identity(2));
        CHECK(linalg::determinant(a) == 1);
        CHECK(linalg::determinant(linalg::IntMatrix{{2, 4, 1}, {0, 3, 5}, {1, 1, 1}}) == 13);
        CHECK_THROWS_AS(linalg::inverse(linalg::RatMatrix{{1, 2}, {2, 4}}), Error);
        auto x = linalg::solve_left(a, RatVector{3, 2});
        REQUIRE(x);
        CHECK(linalg::apply(*x, a) == RatVector{3, 2});
    }

    TEST_CASE("polynomial parsing, printing and arithmetic")
    {
        RationalPolynomial f = parse_polynomial("X^2 - 2*X - 4");
        CHECK(f.to_string() == "-4 - 2*X + X^2");
        CHECK(parse_polynomial(f.to_string()) == f);
        CHECK(parse_polynomial("1/2*X") == RationalPolynomial::x() * Rational(1, 2));
        CHECK(parse_polynomial("2x^2 + x") == parse_polynomial("2*X^2+X"));
        CHECK_THROWS_AS(parse_polynomial("X^"), Error);
        CHECK_THROWS_AS(parse_polynomial("X*Y"), Error);
        CHECK(f(Rational(1)) == -5);
        CHECK(parse_polynomial("X^2").compose(parse_polynomial("X + 1")) == parse_polynomial("X^2 + 2*X + 1"));

        std::mt19937_64 rng(3);
        for (int t = 0; t < 100; ++t) {
            RationalPolynomial a = testing::random_poly(rng, 6, 9, 3), b = testing::random_poly(rng, 4, 9, 3);
            if (b.is_zero())
                continue;
            auto [q, r] = divmod(a, b);
            CHECK(q * b + r == a);
            CHECK(r.degree() < b.degree());
            Bezout bz = extended_gcd(a, b);
            CHECK(bz.s * a + bz.t * b == bz.gcd);
            if (!bz.gcd.is_zero()) {
                CHECK((a % bz.gcd).is_zero());
                CHECK((b % bz.gcd).is_zero());
            }
            CHECK(parse_polynomial(a.to_string()) == a);
        }
    }

    TEST_CASE("characteristic polynomials")
    {
        /* companion matrix of f has charpoly f */
        RationalPolynomial f = parse_polynomial("X^3 - 2*X + 5");
        linalg::RatMatrix c{{0, 1, 0}, {0, 0, 1}, {-5, 2, 0}};
        CHECK(charpoly(c) == f);
        CHECK(charpoly_mod(RationalPolynomial::x(), f) == f);
        CHECK(charpoly_mod(parse_polynomial("X^2"), parse_polynomial("X^2 + 1")) == parse_polynomial("X^2 + 2*X + 1"));
    }

    TEST_CASE("factorization over Q: known irreducible factors")
    {
        std::vector<RationalPolynomial> irr = {
            parse_polynomial("X - 3"),       parse_polynomial("X + 2"),        parse_polynomial("X^2 - 2"),
            parse_polynomial("X^2 + 1"),     parse_polynomial("X^2 + X + 1"),  parse_polynomial("X^3 - 2"),
            parse_polynomial("X^4 + 1"),     parse_polynomial("X^4 - 10*X^2 + 1"),
            parse_polynomial("X^6 + X^3 + 1"), parse_polynomial("X^5 - X - 1"),
        };
        std::mt19937_64 rng(17);
        for (int t = 0; t < 60; ++t) {
            std::map<std::string, int> expect;
            RationalPolynomial f = RationalPolynomial::constant(1);
            int deg = 0;
            while (deg < 4 || uniform(rng, 0, 2) > 0) {
                const auto& g = irr[uniform(rng, 0, irr.size() - 1)];
                if (deg + g.degree() > kMaxFactorDegree)
                    break;
                f = f * g;
                deg += g.degree();
                ++expect[g.to_string()];
            }
            Rational lc(uniform(rng, 1, 5) * (uniform(rng, 0, 1) ? 1 : -1));
            f = f * lc;
            RationalFactorization fac = poly_factor_q(f);
            CHECK(fac.expand() == f);
            std::map<std::string, int> got;
            for (const auto& [g, m] : fac.factors)
                got[g.to_string()] += m;
            CHECK(got == expect);
        }
    }

    TEST_CASE("factorization round trip on 200 random polynomials")
    {
        std::mt19937_64 rng(2024);
        for (int t = 0; t < 200; ++t) {
            RationalPolynomial f;
            do
                f = testing::random_poly(rng, 8, 20);
            while (f.degree() < 1);
            RationalFactorization fac = poly_factor_q(f);
            CHECK(fac.expand() == f);
            for (const auto& [g, m] : fac.factors) {
                CHECK(g.is_monic());
                CHECK(m >= 1);
                /* no rational root in a factor of degree >= 2 (rational root test) */
                if (g.degree() >= 2) {
                    RationalPolynomial h = g * Rational(g.denominator());
                    IntVector c = h.numerator();
                    Integer a0 = abs(c.front()), an = abs(c.back());
                    for (long p = 1; p <= 400 && a0 != 0; ++p)
                        if (mpz_divisible_ui_p(a0.get_mpz_t(), p))
                            for (long q = 1; q <= 50; ++q)
                                if (mpz_divisible_ui_p(an.get_mpz_t(), q))
                                    for (long sgn : {1, -1})
                                        CHECK(g(fraction(sgn * p, q)) != 0);
                }
            }
        }
        CHECK_THROWS_AS(poly_factor_q(RationalPolynomial()), Error);
    }

    TEST_CASE("factorization modulo p against brute force")
    {
        std::mt19937_64 rng(9);
        for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
            modp::Ring ring{Integer(p)};
            for (int t = 0; t < 30; ++t) {
                int deg = uniform(rng, 1, 6);
                modp::Poly f(deg + 1);
                for (auto& c : f)
                    c = uniform(rng, 0, p - 1);
                f[deg] = 1;
                auto fac = modp::factor(f, p);
                modp::Poly prod{1};
                for (const auto& [g, m] : fac)
                    for (int i = 0; i < m; ++i)
                        prod = ring.mul(prod, g);
                CHECK(prod == ring.reduce(f));
                for (const auto& [g, m] : fac) {
                    /* irreducible: no monic divisor of degree 1..deg/2 */
                    int dg = modp::degree(g);
                    for (int d = 1; 2 * d <= dg; ++d) {
                        std::vector<long> c(d, 0);
                        while (true) {
                            modp::Poly h(c.begin(), c.end());
                            h.push_back(1);
                            CHECK_FALSE(ring.rem(g, h).empty());
                            int i = 0;
                            while (i < d && ++c[i] == static_cast<long>(p))
                                c[i++] = 0;
                            if (i == d)
                                break;
                        }
                    }
                }
            }
        }
    }

    TEST_CASE("integer factorization")
    {
        auto check = [](const Integer& n) {
            Integer prod = 1;
            for (const auto& [p, e] : factor_integer(n)) {
                CHECK(mpz_probab_prime_p(p.get_mpz_t(), 30) > 0);
                prod *= ipow(p, e);
            }
            CHECK(prod == abs(n));
        };
        check(Integer(-2012));
        check(Integer(1));
        check(Integer("1000000016000000063")); // (10^9+7)(10^9+9)
        check(Integer("2305843009213693951") * 1000000007 * 4);
        auto f = factor_integer(Integer(720));
        CHECK(f == std::vector<std::pair<Integer, unsigned long>>{{2, 4}, {3, 2}, {5, 1}});
    }
}
