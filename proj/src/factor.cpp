#include "ivp/factor.hpp"

#include "ivp/error.hpp"
#include "ivp/modpoly.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace ivp {

RationalPolynomial RationalFactorization::expand() const
{
    RationalPolynomial r = RationalPolynomial::constant(unit);
    for (const auto& [g, m] : factors)
        r *= g.pow(static_cast<unsigned long>(m));
    return r;
}

namespace {

using modp::Poly;

RationalPolynomial from_integer(const IntVector& v)
{
    std::vector<Rational> c;
    for (const auto& x : v)
        c.emplace_back(x);
    return RationalPolynomial(std::move(c));
}

/* Primitive integer polynomial with positive leading coefficient. */
IntVector primitive_integer(const RationalPolynomial& f)
{
    IntVector v = f.numerator();
    Integer g = content(v);
    if (v.back() < 0)
        g = -g;
    for (auto& x : v)
        x /= g;
    return v;
}

/* One quadratic Hensel step: from f = g*h, s*g + t*h = 1 modulo m to the
 * same identities modulo m^2. h is monic. */
void hensel_step(const IntVector& f, Poly& g, Poly& h, Poly& s, Poly& t, const Integer& m)
{
    modp::Ring R(m * m);
    Poly e = R.sub(R.reduce(f), R.mul(g, h));
    auto [q, r] = R.divmod(R.mul(s, e), h);
    Poly g2 = R.add(R.add(g, R.mul(t, e)), R.mul(q, g));
    Poly h2 = R.add(h, r);
    Poly b = R.sub(R.add(R.mul(s, g2), R.mul(t, h2)), Poly{1});
    auto [c, d] = R.divmod(R.mul(s, b), h2);
    Poly s2 = R.sub(s, d);
    Poly t2 = R.sub(R.sub(t, R.mul(t, b)), R.mul(c, g2));
    g = std::move(g2);
    h = std::move(h2);
    s = std::move(s2);
    t = std::move(t2);
}

/* Lifts f = lc * prod(factors) mod p to a factorization into monic
 * factors modulo p^(2^steps). */
std::vector<Poly> hensel_lift(const IntVector& f, const std::vector<Poly>& factors, unsigned long p, int steps)
{
    Integer P(p);
    Integer M = ipow(P, 1UL << steps);
    modp::Ring Rp(P), RM(M);
    if (factors.size() == 1)
        return {RM.monic(RM.reduce(f))};

    Poly h = factors[0];
    Poly g{Rp.reduce(f.back())};
    for (std::size_t i = 1; i < factors.size(); ++i)
        g = Rp.mul(g, factors[i]);
    Poly gg, s, t;
    Rp.xgcd(g, h, gg, s, t);
    if (gg != Poly{1})
        throw Error(ErrorCode::InternalError, "Hensel lifting needs coprime factors");

    Integer m = P;
    for (int k = 0; k < steps; ++k) {
        hensel_step(f, g, h, s, t, m);
        m *= m;
    }
    std::vector<Poly> rest(factors.begin() + 1, factors.end());
    std::vector<Poly> lifted = hensel_lift(RM.symmetric(g), rest, p, steps);
    lifted.insert(lifted.begin(), h);
    return lifted;
}

bool divides_exactly(const IntVector& g, const IntVector& h, IntVector& quotient)
{
    auto [q, r] = divmod(from_integer(h), from_integer(g));
    if (!r.is_zero() || !q.has_integer_coefficients())
        return false;
    quotient.clear();
    for (const auto& c : q.coefficients())
        quotient.push_back(c.get_num());
    return true;
}

std::vector<unsigned long> small_primes()
{
    std::vector<unsigned long> ps;
    for (unsigned long n = 3; ps.size() < 200; n += 2) {
        bool prime = true;
        for (unsigned long d = 3; d * d <= n; d += 2)
            if (n % d == 0) {
                prime = false;
                break;
            }
        if (prime)
            ps.push_back(n);
    }
    return ps;
}

/* Irreducible factors (primitive, positive leading coefficient) of a
 * squarefree primitive integer polynomial of degree >= 1. */
std::vector<IntVector> factor_squarefree(const IntVector& h)
{
    int n = static_cast<int>(h.size()) - 1;
    if (n <= 1)
        return {h};

    unsigned long best_p = 0;
    std::vector<Poly> best;
    int tried = 0;
    for (unsigned long p : small_primes()) {
        if (mpz_divisible_ui_p(h.back().get_mpz_t(), p))
            continue;
        modp::Ring R{Integer(p)};
        Poly hb = R.reduce(h);
        if (R.gcd(hb, R.derivative(hb)) != Poly{1})
            continue;
        auto fac = modp::factor(hb, p);
        std::vector<Poly> polys;
        for (auto& [q, mult] : fac)
            polys.push_back(q);
        if (best_p == 0 || polys.size() < best.size()) {
            best_p = p;
            best = std::move(polys);
        }
        if (++tried == 5 || best.size() == 1)
            break;
    }
    if (best_p == 0)
        throw Error(ErrorCode::InternalError, "no good reduction prime found");
    if (best.size() == 1)
        return {h};

    /* Landau-Mignotte: coefficients of lc * (factor / lc(factor)) stay below
     * |lc| * 2^n * ||h||_2; lift until the modulus exceeds twice that. */
    Integer norm2 = 0;
    for (const auto& c : h)
        norm2 += c * c;
    Integer norm = sqrt(norm2) + 1;
    Integer bound = 2 * abs(h.back()) * norm;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
    int steps = 0;
    Integer M = best_p;
    while (M <= bound) {
        M *= M;
        ++steps;
    }
    std::vector<Poly> lifted = hensel_lift(h, best, best_p, steps);
    modp::Ring RM(M);

    std::vector<IntVector> result;
    IntVector cur = h;
    std::size_t subset = 1;
    while (2 * subset <= lifted.size()) {
        bool found = false;
        std::vector<std::size_t> idx(subset);
        for (std::size_t i = 0; i < subset; ++i)
            idx[i] = i;
        while (true) {
            Poly g{RM.reduce(cur.back())};
            for (auto i : idx)
                g = RM.mul(g, lifted[i]);
            IntVector cand = RM.symmetric(g);
            Integer c = content(cand);
            if (cand.back() < 0)
                c = -c;
            for (auto& x : cand)
                x /= c;
            IntVector quot;
            if (divides_exactly(cand, cur, quot)) {
                result.push_back(cand);
                cur = quot;
                for (std::size_t k = subset; k-- > 0;)
                    lifted.erase(lifted.begin() + static_cast<std::ptrdiff_t>(idx[k]));
                found = true;
                break;
            }
            /* next combination */
            std::size_t k = subset;
            while (k > 0 && idx[k - 1] == lifted.size() - subset + k - 1)
                --k;
            if (k == 0)
                break;
            ++idx[k - 1];
            for (std::size_t j = k; j < subset; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        if (!found)
            ++subset;
    }
    if (cur.size() > 1)
        result.push_back(primitive_integer(from_integer(cur)));
    return result;
}

bool poly_less(const RationalPolynomial& a, const RationalPolynomial& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (int k = a.degree(); k >= 0; --k)
        if (a.coeff(k) != b.coeff(k))
            return a.coeff(k) < b.coeff(k);
    return false;
}

} // namespace

RationalFactorization poly_factor_q(const RationalPolynomial& f)
{
    if (f.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
    if (f.degree() > kMaxFactorDegree)
        throw Error(ErrorCode::DegreeTooLarge,
                    "degree " + std::to_string(f.degree()) + " exceeds " + std::to_string(kMaxFactorDegree));
    RationalFactorization out;
    out.unit = f.leading();
    if (f.degree() == 0)
        return out;

    /* Yun's squarefree decomposition. */
    RationalPolynomial fm = f.monic();
    RationalPolynomial d1 = fm.derivative();
    RationalPolynomial b = gcd(fm, d1);
    RationalPolynomial c = fm / b;
    RationalPolynomial d = d1 / b - c.derivative();
    int mult = 1;
    while (c.degree() > 0) {
        RationalPolynomial a = gcd(c, d);
        if (a.degree() > 0)
            for (const auto& irr : factor_squarefree(primitive_integer(a)))
                out.factors.emplace_back(from_integer(irr).monic(), mult);
        c = c / a;
        d = d / a - c.derivative();
        ++mult;
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
        if (x.first == y.first)
            return x.second < y.second;
        return poly_less(x.first, y.first);
    });
    return out;
}

namespace {

bool probably_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

/* Brent's variant of Pollard rho; returns a nontrivial factor or 0. */
Integer pollard_rho(const Integer& n, std::uint64_t budget)
{
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    for (unsigned long c = 1; c < 20; ++c) {
        Integer x = 2, y = 2, g = 1, q = 1, ys;
        std::uint64_t r = 1, iters = 0;
        auto step = [&](Integer& v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        while (g == 1 && iters < budget) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                step(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min<std::uint64_t>(128, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    step(y);
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
                iters += lim;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                step(ys);
                Integer diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != 1 && g != n)
            return g;
    }
    return 0;
}

} // namespace

std::vector<std::pair<Integer, unsigned long>> factor_integer(const Integer& n_in, std::uint64_t rho_budget)
{
    if (n_in == 0)
        throw Error(ErrorCode::PreconditionFailed, "factor_integer(0)");
    Integer n = abs(n_in);
    std::vector<std::pair<Integer, unsigned long>> out;
    auto push = [&](const Integer& p) {
        for (auto& [q, e] : out)
            if (q == p) {
                ++e;
                return;
            }
        out.emplace_back(p, 1);
    };
    for (unsigned long d = 2; d <= 1000000 && n > 1; d += (d == 2 ? 1 : 2)) {
        if (Integer(d) * d > n)
            break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            push(Integer(d));
            n /= d;
        }
    }
    std::function<void(const Integer&)> split = [&](const Integer& m) {
        if (m == 1)
            return;
        if (probably_prime(m)) {
            push(m);
            return;
        }
        Integer f = pollard_rho(m, rho_budget);
        if (f == 0)
            throw Error(ErrorCode::DiscFactorizationFailed, "could not split " + m.get_str());
        split(f);
        split(m / f);
    };
    split(n);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ivp
