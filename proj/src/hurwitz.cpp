#include "ivp/hurwitz.hpp"

#include "ivp/error.hpp"

#include <random>

namespace ivp {

Rational Quaternion::norm() const { return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]; }

Quaternion Quaternion::conjugate() const { return {a[0], -a[1], -a[2], -a[3]}; }

Quaternion Quaternion::operator+(const Quaternion& o) const
{
    return {a[0] + o.a[0], a[1] + o.a[1], a[2] + o.a[2], a[3] + o.a[3]};
}

Quaternion Quaternion::operator-(const Quaternion& o) const
{
    return {a[0] - o.a[0], a[1] - o.a[1], a[2] - o.a[2], a[3] - o.a[3]};
}

Quaternion Quaternion::operator*(const Quaternion& o) const
{
    const auto& x = a;
    const auto& y = o.a;
    return {x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
            x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
            x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
            x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0]};
}

Quaternion Quaternion::operator*(const Rational& c) const { return {a[0] * c, a[1] * c, a[2] * c, a[3] * c}; }

std::string Quaternion::to_string() const
{
    return ivp::to_string(RatVector(a.begin(), a.end()));
}

Quaternion hurwitz_unit()
{
    Rational h(1, 2);
    return {h, h, h, h};
}

bool in_z2(const Rational& q) { return mpz_odd_p(q.get_den_mpz_t()) != 0; }

bool hurwitz_member(const Quaternion& alpha)
{
    bool whole = true, half = true;
    Rational one_half(1, 2);
    for (const auto& c : alpha.a) {
        whole = whole && in_z2(c);
        half = half && in_z2(c - one_half);
    }
    return whole || half;
}

bool quaternion_integral(const Quaternion& alpha) { return in_z2(alpha.trace()) && in_z2(alpha.norm()); }

ClosureReport closure_check(const std::vector<Quaternion>& alphas)
{
    ClosureReport r;
    for (const auto& q : alphas) {
        ++r.samples;
        bool integral = quaternion_integral(q), member = hurwitz_member(q);
        r.integral += integral;
        r.members += member;
        if (integral && !member)
            r.counterexamples.push_back(q);
    }
    return r;
}

ClosureReport closure_check(std::uint64_t samples, std::uint64_t seed)
{
    if (samples == 0)
        throw Error(ErrorCode::PreconditionFailed, "closure_check needs at least one sample");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coef(-50, 50), two_exp(0, 4), odd(0, 4);
    std::vector<Quaternion> alphas;
    alphas.reserve(samples);
    for (std::uint64_t s = 0; s < samples; ++s) {
        Quaternion q;
        for (auto& c : q.a)
            c = coef(rng);
        long n = two_exp(rng);
        long e = 2 * odd(rng) + 1;
        Rational den = Rational(Integer(e) << static_cast<unsigned>(n));
        alphas.push_back(q * (1 / den));
    }
    return closure_check(alphas);
}

FourSquareReport four_square_lemma_check(int n, bool diagnostic)
{
    if (!(n == 2 || n == 3 || (diagnostic && n == 1)))
        throw Error(ErrorCode::PreconditionFailed, "four-square check supports n = 2 or 3" +
                                                       std::string(diagnostic ? " (and 1 in diagnostic mode)" : ""));
    FourSquareReport r;
    r.n = n;
    const std::uint32_t m = 1u << (2 * n);
    const std::uint32_t mask = m - 1;
    std::vector<std::uint32_t> sq(m);
    for (std::uint32_t x = 0; x < m; ++x)
        sq[x] = (x * x) & mask;
    r.tuples = static_cast<std::uint64_t>(m) * m * m * m;
    for (std::uint32_t a = 0; a < m; ++a)
        for (std::uint32_t b = 0; b < m; ++b) {
            std::uint32_t ab = sq[a] + sq[b];
            for (std::uint32_t c = 0; c < m; ++c) {
                std::uint32_t abc = ab + sq[c];
                for (std::uint32_t d = 0; d < m; ++d) {
                    if (((abc + sq[d]) & mask) != 0)
                        continue;
                    ++r.solutions;
                    if ((a | b | c | d) & 1) {
                        ++r.violations;
                        if (r.examples.size() < 16)
                            r.examples.push_back({int(a), int(b), int(c), int(d)});
                    }
                }
            }
        }
    return r;
}

bool norm_in_D_check(std::uint64_t samples, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coef(-50, 50), odd(0, 4), kind(0, 1);
    for (std::uint64_t s = 0; s < samples; ++s) {
        Quaternion q;
        bool half = kind(rng) == 1;
        for (auto& c : q.a) {
            long v = coef(rng);
            c = half ? fraction(2 * v + 1, 2) : Rational(v);
        }
        q = q * fraction(1, 2 * odd(rng) + 1);
        if (!hurwitz_member(q))
            throw Error(ErrorCode::InternalError, "sampler produced a non-member " + q.to_string());
        if (!in_z2(q.norm()))
            return false;
    }
    return true;
}

OddGridReport odd_grid_check()
{
    static const long vals[] = {-3, -1, 1, 3, 5};
    OddGridReport r;
    for (long e = -9; e <= 9; e += 2)
        for (long a0 : vals)
            for (long a1 : vals)
                for (long a2 : vals)
                    for (long a3 : vals) {
                        Quaternion q = Quaternion(a0, a1, a2, a3) * fraction(1, 2 * e);
                        ++r.points;
                        if (!hurwitz_member(q))
                            ++r.not_member;
                        else if (!quaternion_integral(q))
                            ++r.not_integral;
                    }
    return r;
}

} // namespace ivp
