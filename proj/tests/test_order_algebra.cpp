#include "support.hpp"

#include "ivp/error.hpp"
#include "ivp/lattice.hpp"

#include <doctest.h>

using namespace ivp;
using namespace ivp::testing;

namespace {

ErrorCode load_error(const std::string& text)
{
    try {
        load_order(nlohmann::json::parse(text));
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InternalError;
}

} // namespace

TEST_SUITE("order-algebra")
{
    TEST_CASE("corpus loads and round-trips through JSON")
    {
        for (const auto& name : corpus_names()) {
            CAPTURE(name);
            ZOrder a = corpus(name);
            ZOrder b = load_order(nlohmann::json::parse(a.to_json().dump()));
            CHECK(b.table() == a.table());
            CHECK(b.one_coords() == a.one_coords());
            CHECK(b.basis_names() == a.basis_names());
        }
    }

    TEST_CASE("validation errors")
    {
        CHECK(load_error(R"({"dim": 1, "one": [2], "table": [[[1]]]})") == ErrorCode::UnitLineNotSaturated);
        CHECK(load_error(R"({"dim": 2, "one": [2, 2], "table": [[[1,0],[0,0]],[[0,0],[0,1]]]})") ==
              ErrorCode::UnitLineNotSaturated);
        CHECK(load_error(R"({"dim": 1, "one": [1], "table": [[[2]]]})") == ErrorCode::NoIdentity);
        /* b1 b1 = b2, everything else 0 except b2 b1 = b1: (b1 b1) b1 = b1 but b1 (b1 b1) = 0 */
        CHECK(load_error(R"({"dim": 2, "one": [0, 1], "table": [[[0,1],[0,0]],[[1,0],[0,1]]]})") ==
              ErrorCode::NonAssociative);
        CHECK(load_error(R"({"dim": 2, "one": [1, 0], "table": [[[1,0]]]})") == ErrorCode::MalformedInput);
        CHECK(load_error(R"({"dim": 1, "one": [1.5], "table": [[[1]]]})") == ErrorCode::MalformedInput);
        CHECK(load_error(R"({"dim": 0, "one": [], "table": []})") == ErrorCode::MalformedInput);
        CHECK(load_error(R"({"one": [1], "table": [[[1]]]})") == ErrorCode::MalformedInput);
        CHECK(load_error(R"([1, 2])") == ErrorCode::MalformedInput);
        CHECK_THROWS_AS(load_order_file("/nonexistent/order.json"), Error);
    }

    TEST_CASE("multiplication")
    {
        ZOrder m2 = corpus("m2z");
        AlgebraElement y = vec({3, -1, 4, 1});
        CHECK(m2.mul(m2.one(), y) == y);
        CHECK(m2.mul(y, m2.one()) == y);
        CHECK(m2.mul(vec({0, 1, 0, 0}), vec({0, 0, 1, 0})) == vec({1, 0, 0, 0}));

        ZOrder h = corpus("hurwitz");
        AlgebraElement i = h.basis_element(1), j = h.basis_element(2), k = h.basis_element(3);
        CHECK(h.mul(i, j) == k);
        CHECK(h.mul(j, i) == k * Rational(-1));
        CHECK_THROWS_AS(m2.mul(vec({1, 0}), y), Error);
        CHECK(m2.pow(vec({0, 1, 0, 0}), 2).is_zero());
        CHECK(m2.trace(m2.one()) == 4);
    }

    TEST_CASE("minimal polynomials")
    {
        ZOrder m2 = corpus("m2z");
        CHECK(minimal_polynomial(m2, mat(0, 4, 1, 2)) == parse_polynomial("X^2 - 2*X - 4"));
        CHECK(minimal_polynomial(m2, m2.one()) == parse_polynomial("X - 1"));
        CHECK(minimal_polynomial(m2, m2.zero()) == parse_polynomial("X"));
        ZOrder h = corpus("hurwitz");
        CHECK(minimal_polynomial(h, h.basis_element(0)) == parse_polynomial("X^2 - X + 1"));
        CHECK(characteristic_polynomial(m2, mat(0, 4, 1, 2)) == parse_polynomial("X^2 - 2*X - 4").pow(2));
    }

    TEST_CASE("commutativity, radical and reducedness")
    {
        CHECK(is_commutative(corpus("z_sqrt5")).commutative);
        ZOrder m2 = corpus("m2z");
        CommutativityResult c = is_commutative(m2);
        REQUIRE_FALSE(c.commutative);
        AlgebraElement bi = m2.basis_element(c.i), bj = m2.basis_element(c.j);
        CHECK_FALSE(m2.mul(bi, bj) == m2.mul(bj, bi));
        ZOrder h = corpus("hurwitz");
        CHECK_FALSE(is_commutative(h).commutative);

        ZOrder nil = corpus("z_x_mod_x2");
        linalg::RatMatrix rad = jacobson_radical_b(nil);
        REQUIRE(rad.size() == 1);
        CHECK(AlgebraElement(rad[0]) * Rational(1 / rad[0][1]) == vec({0, 1}));
        CHECK(jacobson_radical_b(m2).empty());
        CHECK(linalg::determinant(trace_gram(m2)) != 0);
        CHECK(jacobson_radical_b(corpus("zxz")).empty());

        ReducedResult r = is_reduced(nil);
        CHECK(r.status == Reducedness::NotReduced);
        REQUIRE(r.witness);
        CHECK(*r.witness == vec({0, 1}));
        CHECK(r.nilpotency_index == 2);
        CHECK(is_reduced(corpus("z_sqrt5")).status == Reducedness::Reduced);
        CHECK(discriminant(corpus("z_sqrt5")) == 20);
        CHECK(is_reduced(m2).status == Reducedness::UndecidedSemisimple);

        /* every element of the radical is nilpotent */
        ZOrder big = product_order(nil, monogenic({0, 0, 0, 1}));
        for (const auto& row : jacobson_radical_b(big))
            CHECK(nilpotency_index(big, AlgebraElement(row)) > 0);
    }

    TEST_CASE("minimal polynomial divides the characteristic polynomial")
    {
        std::mt19937_64 rng(31);
        std::vector<ZOrder> orders;
        for (const auto& name : corpus_names()) {
            ZOrder a = corpus(name);
            if (a.dim() <= 4)
                orders.push_back(a);
        }
        for (int t = 0; t < 100; ++t) {
            const ZOrder& a = orders[t % orders.size()];
            AlgebraElement b = random_element(rng, a.dim(), 5) * fraction(1, uniform(rng, 1, 3));
            RationalPolynomial mu = minimal_polynomial(a, b);
            CHECK(mu.is_monic());
            CHECK(evaluate(a, mu, b).is_zero());
            CHECK((characteristic_polynomial(a, b) % mu).is_zero());
            /* nothing of smaller degree kills b: 1, b, ..., b^(deg-1) are independent */
            linalg::RatMatrix powers;
            for (int k = 0; k < mu.degree(); ++k)
                powers.push_back(a.pow(b, k).coords);
            CHECK(linalg::rank(powers) == static_cast<std::size_t>(mu.degree()));
        }
    }

    TEST_CASE("minimal polynomial of f(b) divides charpoly of f on Q[X]/(mu_b)")
    {
        std::mt19937_64 rng(37);
        std::vector<std::string> names = {"z_sqrt5", "z_i", "z_golden", "m2z", "zxz", "z_cbrt2", "z_x_z_i"};
        for (int t = 0; t < 60; ++t) {
            ZOrder a = corpus(names[t % names.size()]);
            AlgebraElement b = random_element(rng, a.dim(), 4);
            RationalPolynomial f = random_poly(rng, 3, 4, 2);
            RationalPolynomial mu_b = minimal_polynomial(a, b);
            RationalPolynomial mu_fb = minimal_polynomial(a, evaluate(a, f, b));
            CHECK((charpoly_mod(f, mu_b) % mu_fb).is_zero());
        }
        /* quadratic case by hand: b = sqrt5, f = (X + 1)/2 gives the golden ratio */
        ZOrder s5 = corpus("z_sqrt5");
        RationalPolynomial f = parse_polynomial("1/2*X + 1/2");
        CHECK(minimal_polynomial(s5, evaluate(s5, f, s5.basis_element(1))) == parse_polynomial("X^2 - X - 1"));
    }

    TEST_CASE("Hausdorff: a nonzero element is not in d^k A for large k")
    {
        std::mt19937_64 rng(41);
        for (const auto& name : corpus_names()) {
            ZOrder a = corpus(name);
            AlgebraElement x;
            do
                x = random_element(rng, a.dim(), 20);
            while (x.is_zero());
            Integer bound = 0;
            for (const auto& c : x.coords)
                bound = std::max(bound, Integer(abs(c.get_num())));
            for (long d : {2, 3, 5}) {
                Integer dk = d;
                while (dk <= bound)
                    dk *= d;
                CHECK_FALSE(lattice_member(IntegerLattice::standard(a.dim()).scaled(dk), x.coords));
                CHECK(lattice_member(IntegerLattice::standard(a.dim()).scaled(dk), (x * Rational(dk)).coords));
            }
        }
    }

    TEST_CASE("products and suborders")
    {
        ZOrder p = product_order(corpus("z"), corpus("z_i"));
        CHECK(p.dim() == 3);
        CHECK(p.one_coords() == IntVector{1, 1, 0});
        CHECK(is_commutative(p).commutative);

        /* Z[2i] inside Z[i] */
        ZOrder zi = corpus("z_i");
        EmbeddedOrder sub = order_from_lattice(zi, {{1, 0}, {0, 2}}, zi.one());
        CHECK(discriminant(sub.order) == -16);
        CHECK(sub.to_ambient(sub.order.basis_element(1)) == vec({0, 2}));
        auto back = sub.from_ambient(vec({3, 4}));
        REQUIRE(back);
        CHECK(*back == vec({3, 2}));
        CHECK_THROWS_AS(order_from_lattice(zi, {{1, 0}, {Rational(1, 2), Rational(1, 2)}}, zi.one()), Error);
    }
}
