#include "support.hpp"

#include "ivp/decomposition.hpp"
#include "ivp/error.hpp"
#include "ivp/factor.hpp"

#include <doctest.h>

using namespace ivp;
using namespace ivp::testing;

namespace {

void check_identities(const ZOrder& a, const Decomposition& dec)
{
    AlgebraElement total = a.zero();
    std::size_t dims = 0;
    for (std::size_t i = 0; i < dec.size(); ++i) {
        const AlgebraElement& ei = dec.idempotents[i];
        total = total + ei;
        for (std::size_t j = 0; j < dec.size(); ++j)
            CHECK(a.mul(ei, dec.idempotents[j]) == (i == j ? ei : a.zero()));
        dims += dec.component_bases[i].size();
        CHECK(dec.component_bases[i].size() == static_cast<std::size_t>(dec.component_minpolys[i].degree()));
        CHECK(poly_factor_q(dec.component_minpolys[i]).factors.size() == 1);
    }
    CHECK(total == a.one());
    CHECK(dims == a.dim());
    RationalPolynomial prod = RationalPolynomial::constant(1);
    for (const auto& g : dec.component_minpolys)
        prod = prod * g;
    CHECK(prod == dec.primitive_minpoly);
    CHECK(minimal_polynomial(a, dec.primitive) == dec.primitive_minpoly);
}

ZOrder diagonal_suborder()
{
    /* Z(1,1) + Z(0,2) inside Q x Q */
    return ZOrder({"u", "v"}, {1, 0}, {{{1, 0}, {0, 1}}, {{0, 1}, {0, 2}}});
}

} // namespace

TEST_SUITE("semisimple-structure")
{
    TEST_CASE("primitive elements")
    {
        ZOrder s5 = corpus("z_sqrt5");
        AlgebraElement a = find_primitive_element(s5);
        CHECK(a == vec({0, 1}));
        CHECK(minimal_polynomial(s5, a) == parse_polynomial("X^2 - 5"));
        CHECK(minimal_polynomial(corpus("z_i"), find_primitive_element(corpus("z_i"))) == parse_polynomial("X^2 + 1"));
        ZOrder zz = corpus("zxz");
        CHECK(minimal_polynomial(zz, find_primitive_element(zz)).degree() == 2);
        CHECK(minimal_polynomial(zz, vec({0, 1})) == parse_polynomial("X^2 - X"));
        CHECK_THROWS_AS(find_primitive_element(corpus("m2z")), Error);
        /* Z^3 needs distinct coordinates: the search goes past max-norm 1 */
        ZOrder z3 = product_order(zz, corpus("z"));
        CHECK(minimal_polynomial(z3, find_primitive_element(z3)).degree() == 3);
    }

    TEST_CASE("decomposition examples")
    {
        ZOrder zz = corpus("zxz");
        Decomposition d = decompose(zz);
        REQUIRE(d.size() == 2);
        CHECK(d.idempotents[0] == vec({1, 0}));
        CHECK(d.idempotents[1] == vec({0, 1}));
        check_identities(zz, d);

        ZOrder x2 = corpus("z_x2_minus_1");
        d = decompose(x2);
        REQUIRE(d.size() == 2);
        for (const auto& e : d.idempotents) {
            CHECK(x2.mul(e, e) == e);
            CHECK(e.coords[0] == Rational(1, 2));
            CHECK(abs(e.coords[1]) == Rational(1, 2));
        }
        check_identities(x2, d);

        ZOrder g = corpus("z_golden");
        d = decompose(g);
        REQUIRE(d.size() == 1);
        CHECK(d.component_minpolys[0] == parse_polynomial("X^2 - X - 1"));
        CHECK_THROWS_AS(decompose(corpus("z_x_mod_x2")), Error);
        CHECK_THROWS_AS(decompose(corpus("m2z")), Error);
    }

    TEST_CASE("idempotent identities on every commutative reduced corpus order")
    {
        for (const auto& name : corpus_names()) {
            ZOrder a = corpus(name);
            if (!is_commutative(a).commutative || is_reduced(a).status != Reducedness::Reduced)
                continue;
            CAPTURE(name);
            check_identities(a, decompose(a));
        }
        std::mt19937_64 rng(43);
        for (int t = 0; t < 30; ++t) {
            ZOrder a = random_order(rng, 4);
            if (is_reduced(a).status != Reducedness::Reduced)
                continue;
            check_identities(a, decompose(a));
        }
    }

    TEST_CASE("idempotents in A")
    {
        CHECK(idempotents_in_A(corpus("zxz"), decompose(corpus("zxz"))).all_in_A);
        CHECK(idempotents_in_A(corpus("z_golden"), decompose(corpus("z_golden"))).all_in_A);

        ZOrder sub = diagonal_suborder();
        Decomposition d = decompose(sub);
        IdempotentCheck c = idempotents_in_A(sub, d);
        REQUIRE_FALSE(c.all_in_A);
        const AlgebraElement& e = d.idempotents[*c.escaping];
        /* (1,0) = u - v/2 and (0,1) = v/2 in Q x Q */
        CHECK((e == AlgebraElement(RatVector{1, Rational(-1, 2)}) || e == AlgebraElement(RatVector{0, Rational(1, 2)})));
        CHECK(minimal_polynomial(sub, e) == parse_polynomial("X^2 - X"));
        CHECK_FALSE(sub.contains(e));
        CHECK_THROWS_AS(component_order(corpus("z_x2_minus_1"), decompose(corpus("z_x2_minus_1")), 0), Error);
    }

    TEST_CASE("component orders")
    {
        ZOrder zz = corpus("zxz");
        EmbeddedOrder c = component_order(zz, decompose(zz), 0);
        CHECK(c.order.dim() == 1);
        CHECK(c.order.table(0, 0) == IntVector{1});

        ZOrder p = corpus("z_x_z_i");
        Decomposition d = decompose(p);
        REQUIRE(d.size() == 2);
        EmbeddedOrder zi = component_order(p, d, 1);
        REQUIRE(zi.order.dim() == 2);
        CHECK(discriminant(zi.order) == discriminant(corpus("z_i")));
        CHECK(minimal_polynomial(zi.order, zi.order.basis_element(1)) == parse_polynomial("X^2 + 1"));
        /* decomposing a component again gives one factor */
        for (std::size_t i = 0; i < d.size(); ++i)
            CHECK(decompose(component_order(p, d, i).order).size() == 1);
    }
}
