#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <filesystem>

namespace ivp::testing {

std::string data_path(const std::string& name) { return std::string(IVP_DATA_DIR) + "/" + name + ".json"; }

ZOrder corpus(const std::string& name) { return load_order_file(data_path(name)); }

std::vector<std::string> corpus_names()
{
    std::vector<std::string> names;
    for (const auto& e : std::filesystem::directory_iterator(IVP_DATA_DIR))
        if (e.path().extension() == ".json")
            names.push_back(e.path().stem().string());
    std::sort(names.begin(), names.end());
    return names;
}

ZOrder monogenic(const std::vector<long>& f)
{
    std::size_t n = f.size() - 1;
    auto reduce = [&](std::vector<Integer> v) {
        v.resize(std::max(v.size(), n), 0);
        for (std::size_t d = v.size(); d-- > n;)
            if (v[d] != 0) {
                Integer c = v[d];
                for (std::size_t k = 0; k <= n; ++k)
                    v[d - n + k] -= c * f[k];
            }
        v.resize(n);
        return IntVector(v.begin(), v.end());
    };
    ZOrder::Table t(n, std::vector<IntVector>(n));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(i == 0 ? "1" : "x^" + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Integer> v(i + j + 1, 0);
            v[i + j] = 1;
            t[i][j] = reduce(v);
        }
    }
    IntVector one(n, 0);
    one[0] = 1;
    return ZOrder(names, one, t);
}

ZOrder matrix_ring_2x2()
{
    ZOrder::Table t(4, std::vector<IntVector>(4, IntVector(4, 0)));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int d = 0; d < 2; ++d)
                t[2 * a + b][2 * b + d][2 * a + d] = 1;
    return ZOrder({"e11", "e12", "e21", "e22"}, {1, 0, 0, 1}, t);
}

AlgebraElement vec(std::initializer_list<long> xs)
{
    IntVector v;
    for (long x : xs)
        v.emplace_back(x);
    return AlgebraElement(v);
}

AlgebraElement mat(long a, long b, long c, long d) { return vec({a, b, c, d}); }

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

RationalPolynomial random_poly(std::mt19937_64& rng, int max_deg, long bound, long max_den)
{
    int deg = static_cast<int>(uniform(rng, 0, max_deg));
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i)
        c.push_back(Rational(uniform(rng, -bound, bound)));
    long d = uniform(rng, 1, max_den);
    return RationalPolynomial(c) * fraction(1, d);
}

AlgebraElement random_element(std::mt19937_64& rng, std::size_t n, long bound)
{
    IntVector v;
    for (std::size_t i = 0; i < n; ++i)
        v.emplace_back(uniform(rng, -bound, bound));
    return AlgebraElement(v);
}

ZOrder random_order(std::mt19937_64& rng, std::size_t max_dim)
{
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_dim)));
    if (n >= 2 && uniform(rng, 0, 3) == 0) {
        std::size_t k = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n) - 1));
        return product_order(random_order(rng, k), random_order(rng, n - k));
    }
    std::vector<long> f;
    for (std::size_t i = 0; i < n; ++i)
        f.push_back(uniform(rng, -4, 4));
    f.push_back(1);
    return monogenic(f);
}

AlgebraElement horner(const ZOrder& a, const RationalPolynomial& f, const AlgebraElement& x)
{
    AlgebraElement acc = a.zero();
    const auto& c = f.coefficients();
    for (std::size_t k = c.size(); k-- > 0;)
        acc = a.mul(acc, x) + a.one() * c[k];
    return acc;
}

bool brute_int_member(const ZOrder& a, const RationalPolynomial& f)
{
    Integer den = f.is_zero() ? Integer(1) : f.denominator();
    long d = den.get_si();
    std::size_t n = a.dim();
    std::vector<long> x(n, 0);
    for (;;) {
        IntVector v(x.begin(), x.end());
        if (!a.contains(horner(a, f, AlgebraElement(v))))
            return false;
        std::size_t i = 0;
        while (i < n && ++x[i] == d)
            x[i++] = 0;
        if (i == n)
            return true;
    }
}

namespace {

long lcm_upto(long q, std::size_t n)
{
    long l = 1, qi = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        qi *= q;
        l = std::lcm(l, qi - 1);
    }
    return l;
}

RationalPolynomial killer_mod_q(std::size_t n, long q)
{
    long e = lcm_upto(q, n);
    for (long qk = 1;; qk *= q)
        if (qk >= static_cast<long>(n)) {
            e *= qk;
            break;
        }
    RationalPolynomial x = RationalPolynomial::x();
    return x.pow(n) * (x.pow(static_cast<unsigned long>(e)) - RationalPolynomial::constant(1));
}

} // namespace

RationalPolynomial vanishing_poly(std::size_t n, long d)
{
    if (d == 4)
        return killer_mod_q(n, 2).pow(2) * Rational(1, 4);
    return killer_mod_q(n, d) * fraction(1, d);
}

std::pair<ZOrder, RationalPolynomial> random_membership_case(std::mt19937_64& rng)
{
    ZOrder a = random_order(rng, 3);
    long d = uniform(rng, 2, 4);
    RationalPolynomial g = random_poly(rng, 4, 6);
    RationalPolynomial f;
    if (uniform(rng, 0, 1) == 0) {
        f = g * fraction(1, d);
    } else {
        RationalPolynomial u = random_poly(rng, 2, 3);
        if (u.is_zero())
            u = RationalPolynomial::constant(1);
        f = g + u * vanishing_poly(a.dim(), d);
        /* a stray 1/d term on top of a member; usually not integer valued */
        if (uniform(rng, 0, 3) == 0)
            f = f + RationalPolynomial::monomial(fraction(1, d), static_cast<int>(uniform(rng, 0, 3)));
    }
    return {a, f};
}

std::vector<RationalPolynomial> transform_pool(const std::string& field, std::uint64_t seed, int count)
{
    RationalPolynomial x = RationalPolynomial::x();
    RationalPolynomial one = RationalPolynomial::constant(1);
    std::vector<RationalPolynomial> gens;
    if (field == "z") {
        gens = {one, x, x * (x - one) * Rational(1, 2), x * (x - one) * (x - RationalPolynomial::constant(2)) * Rational(1, 6)};
    } else if (field == "z_i") {
        RationalPolynomial g = (x * x - x).pow(2) * Rational(1, 2);
        gens = {one, x, g, x * g};
    } else if (field == "z_golden") {
        RationalPolynomial g = (x.pow(4) - x) * Rational(1, 2);
        gens = {one, x, g, x * g};
    } else {
        throw std::invalid_argument("unknown pool " + field);
    }
    std::mt19937_64 rng(seed);
    std::vector<RationalPolynomial> pool;
    while (static_cast<int>(pool.size()) < count) {
        RationalPolynomial f;
        for (const auto& g : gens)
            f = f + g * Rational(uniform(rng, -3, 3));
        if (f.degree() < 1)
            continue;
        pool.push_back(f);
    }
    return pool;
}

} // namespace ivp::testing
