#include "support.hpp"

#include "ivp/closure.hpp"
#include "ivp/decomposition.hpp"
#include "ivp/error.hpp"
#include "ivp/factor.hpp"

#include <doctest.h>

using namespace ivp;
using namespace ivp::testing;

namespace {

bool commutative_etale(const ZOrder& a)
{
    return is_commutative(a).commutative && discriminant(a) != 0;
}

/* Discriminant of the ring of integers of Q(sqrt(d)), d squarefree != 1. */
Integer quadratic_field_disc(long d) { return (d % 4 + 4) % 4 == 1 ? Integer(d) : Integer(4 * d); }

long squarefree_kernel(long m)
{
    long s = m < 0 ? -1 : 1;
    m = std::abs(m);
    for (long p = 2; p * p <= m; ++p)
        while (m % (p * p) == 0)
            m /= p * p;
    return s * m;
}

} // namespace

TEST_SUITE("integral-closure")
{
    TEST_CASE("integrality")
    {
        ZOrder m2 = corpus("m2z");
        IntegralityVerdict v = is_integral(m2, mat(0, 4, 1, 2) * Rational(1, 2));
        CHECK(v.integral);
        CHECK_FALSE(v.in_A);
        CHECK(v.minpoly == parse_polynomial("X^2 - X - 1"));
        ZOrder zz = corpus("zxz");
        CHECK(is_integral(zz, vec({1, 0})).integral);
        ZOrder zi = corpus("z_i");
        IntegralityVerdict h = is_integral(zi, AlgebraElement(RatVector{0, Rational(1, 2)}));
        CHECK_FALSE(h.integral);
        CHECK(h.minpoly == parse_polynomial("X^2 + 1/4"));
    }

    TEST_CASE("p-radicals")
    {
        CHECK(p_radical(corpus("z_sqrt5"), 2).basis() == linalg::IntMatrix{{1, 1}, {0, 2}});
        CHECK(p_radical(corpus("z_i"), 3).basis() == linalg::IntMatrix{{3, 0}, {0, 3}});
        CHECK(p_radical(corpus("z"), 5).basis() == linalg::IntMatrix{{5}});
        /* brute force: x in I_2 iff x^2 in 2O for Z[sqrt5] (O/2O has 4 elements) */
        ZOrder s5 = corpus("z_sqrt5");
        IntegerLattice rad = p_radical(s5, 2);
        for (long a = 0; a < 4; ++a)
            for (long b = 0; b < 4; ++b) {
                AlgebraElement x = vec({a, b});
                AlgebraElement sq = s5.mul(x, x);
                bool nil = is_integral((sq * Rational(1, 2)).coords);
                CHECK(rad.contains(x.coords) == nil);
            }
    }

    TEST_CASE("rings of multipliers")
    {
        ZOrder s5 = corpus("z_sqrt5");
        EmbeddedOrder m = ring_of_multipliers(s5, p_radical(s5, 2));
        CHECK(abs(linalg::determinant(m.basis)) == Rational(1, 2));
        CHECK(m.from_ambient(AlgebraElement(RatVector{Rational(1, 2), Rational(1, 2)})).has_value());
        CHECK(minimal_polynomial(m.order, *m.from_ambient(AlgebraElement(RatVector{Rational(1, 2), Rational(1, 2)}))) ==
              parse_polynomial("X^2 - X - 1"));
        ZOrder zi = corpus("z_i");
        EmbeddedOrder same = ring_of_multipliers(zi, IntegerLattice::standard(2).scaled(2));
        CHECK(abs(linalg::determinant(same.basis)) == 1);
        EmbeddedOrder z = ring_of_multipliers(corpus("z"), IntegerLattice::standard(1).scaled(7));
        CHECK(z.basis == linalg::RatMatrix{{1}});
    }

    TEST_CASE("maximal orders of the corpus")
    {
        MaximalOrderResult m = maximal_order(corpus("z_sqrt5"));
        CHECK(m.index == 2);
        CHECK(m.disc_input == 20);
        CHECK(m.disc_maximal == 5);
        CHECK(maximal_order(corpus("z_golden")).index == 1);
        MaximalOrderResult t = maximal_order(corpus("z_3i"));
        CHECK(t.index == 3);
        CHECK(t.order.from_ambient(AlgebraElement(RatVector{0, Rational(1, 3)})).has_value());
        MaximalOrderResult d = maximal_order(corpus("dedekind_cubic"));
        CHECK(d.index == 2);
        CHECK(d.disc_maximal == -503);
        CHECK_THROWS_AS(maximal_order(corpus("z_x_mod_x2")), Error);

        ClosednessResult c = is_integrally_closed_order(corpus("z_sqrt5"));
        CHECK_FALSE(c.closed);
        REQUIRE(c.witness);
        CHECK(*c.witness == AlgebraElement(RatVector{Rational(1, 2), Rational(1, 2)}));
        CHECK(is_integrally_closed_order(corpus("z_i")).closed);
        CHECK(is_integrally_closed_order(corpus("z")).closed);

        for (const auto& name : corpus_names()) {
            ZOrder a = corpus(name);
            if (!commutative_etale(a))
                continue;
            CAPTURE(name);
            MaximalOrderResult r = maximal_order(a);
            CHECK(r.disc_maximal * r.index * r.index == r.disc_input);
            /* idempotent: the maximal order is its own maximal order */
            MaximalOrderResult again = maximal_order(r.order.order);
            CHECK(again.index == 1);
            CHECK(is_integrally_closed_order(r.order.order).closed);
            /* every basis vector is integral; A sits inside */
            for (const auto& row : r.order.basis) {
                RationalPolynomial mu = minimal_polynomial(a, AlgebraElement(row));
                CHECK(mu.has_integer_coefficients());
            }
            for (std::size_t i = 0; i < a.dim(); ++i)
                CHECK(r.order.from_ambient(a.basis_element(i)).has_value());
            ClosednessResult cl = is_integrally_closed_order(a);
            if (cl.witness) {
                RationalPolynomial mu = minimal_polynomial(a, *cl.witness);
                CHECK(mu.is_monic());
                CHECK(mu.has_integer_coefficients());
                CHECK_FALSE(lattice_member(IntegerLattice::standard(a.dim()), cl.witness->coords));
            }
        }
    }

    TEST_CASE("quadratic orders against the discriminant formula")
    {
        std::mt19937_64 rng(47);
        for (int t = 0; t < 80; ++t) {
            long m = uniform(rng, -80, 80);
            long r = static_cast<long>(std::lround(std::sqrt(std::abs(static_cast<double>(m)))));
            if (m >= 0 && r * r == m)
                continue;
            long d = squarefree_kernel(m);
            ZOrder a = monogenic({-m, 0, 1});
            MaximalOrderResult res = maximal_order(a);
            CAPTURE(m);
            CHECK(res.disc_maximal == quadratic_field_disc(d));
            CHECK(res.index * res.index * quadratic_field_disc(d) == 4 * m);
        }
    }

    TEST_CASE("random orders: witnesses are integral and outside")
    {
        std::mt19937_64 rng(53);
        int seen = 0;
        for (int t = 0; t < 60; ++t) {
            ZOrder a = random_order(rng, 3);
            if (!commutative_etale(a))
                continue;
            ++seen;
            ClosednessResult cl = is_integrally_closed_order(a);
            CHECK(cl.closed == (cl.maximal.index == 1));
            CHECK(cl.maximal.disc_maximal * cl.maximal.index * cl.maximal.index == cl.maximal.disc_input);
            if (!cl.closed) {
                REQUIRE(cl.witness);
                RationalPolynomial mu = minimal_polynomial(a, *cl.witness);
                CHECK(mu.has_integer_coefficients());
                CHECK_FALSE(a.contains(*cl.witness));
            }
            for (const auto& p : cl.maximal.primes)
                CHECK(is_p_maximal(cl.maximal.order.order, p));
        }
        CHECK(seen > 20);
    }
}
