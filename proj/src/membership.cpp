#include "ivp/membership.hpp"

#include "ivp/decomposition.hpp"
#include "ivp/error.hpp"
#include "ivp/factor.hpp"
#include "ivp/modpoly.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <set>
#include <thread>

namespace ivp {

std::uint64_t residue_budget_from_env()
{
    const char* v = std::getenv("IVP_BUDGET");
    if (!v || !*v)
        return kDefaultResidueBudget;
    char* end = nullptr;
    unsigned long long b = std::strtoull(v, &end, 10);
    if (*end != '\0' || b == 0)
        throw Error(ErrorCode::MalformedInput, std::string("IVP_BUDGET must be a positive integer, got '") + v + "'");
    return b;
}

FiniteMembership int_member_finite(const ZOrder& a, const std::vector<AlgebraElement>& s, const RationalPolynomial& f)
{
    if (s.empty())
        throw Error(ErrorCode::PreconditionFailed, "S must be nonempty");
    for (std::size_t i = 0; i < s.size(); ++i) {
        AlgebraElement v = evaluate(a, f, s[i]);
        if (!a.contains(v))
            return {false, i, v};
    }
    return {};
}

namespace {

/* ---- modular evaluation in A / mA ------------------------------------ */

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 to_word(const Integer& x, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r.get_ui();
}

/* Structure constants of A reduced modulo a word-sized m (m < 2^32). */
class WordAlgebra {
  public:
    WordAlgebra(const ZOrder& a, u64 m) : n_(a.dim()), m_(m), t_(n_ * n_ * n_), one_(n_)
    {
        Integer mm(static_cast<unsigned long>(m));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k)
                    t_[(i * n_ + j) * n_ + k] = to_word(a.table(i, j)[k], mm);
        for (std::size_t k = 0; k < n_; ++k)
            one_[k] = to_word(a.one_coords()[k], mm);
    }

    u64 modulus() const { return m_; }
    std::size_t dim() const { return n_; }

    /* lm[j*n + k] = coordinate k of x * b_j */
    void left_matrix(const u64* x, u64* lm) const
    {
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) {
                u128 s = 0;
                for (std::size_t i = 0; i < n_; ++i)
                    s += static_cast<u128>(x[i]) * t_[(i * n_ + j) * n_ + k];
                lm[j * n_ + k] = static_cast<u64>(s % m_);
            }
    }

    /* out = g(x) for coefficients g (already reduced), given lm = L_x. */
    void evaluate(const std::vector<u64>& g, const u64* lm, u64* out, u64* tmp) const
    {
        std::fill(out, out + n_, 0);
        for (auto it = g.rbegin(); it != g.rend(); ++it) {
            for (std::size_t k = 0; k < n_; ++k) {
                u128 s = static_cast<u128>(*it) * one_[k];
                for (std::size_t j = 0; j < n_; ++j)
                    s += static_cast<u128>(out[j]) * lm[j * n_ + k];
                tmp[k] = static_cast<u64>(s % m_);
            }
            std::copy(tmp, tmp + n_, out);
        }
    }

  private:
    std::size_t n_;
    u64 m_;
    std::vector<u64> t_, one_;
};

std::vector<u64> reduce_coeffs(const IntVector& g, u64 m)
{
    Integer mm(static_cast<unsigned long>(m));
    std::vector<u64> r;
    for (const auto& c : g)
        r.push_back(to_word(c, mm));
    return r;
}

u64 saturating_pow(u64 b, std::size_t e)
{
    u64 r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (b != 0 && r > std::numeric_limits<u64>::max() / b)
            return std::numeric_limits<u64>::max();
        r *= b;
    }
    return r;
}

u64 saturating_add(u64 a, u64 b) { return a > std::numeric_limits<u64>::max() - b ? std::numeric_limits<u64>::max() : a + b; }

u64 residues_for(const Integer& modulus, std::size_t n)
{
    if (!modulus.fits_ulong_p())
        return std::numeric_limits<u64>::max();
    return saturating_pow(modulus.get_ui(), n);
}

void point_from_index(u64 idx, u64 m, std::size_t n, u64* pt)
{
    for (std::size_t i = 0; i < n; ++i) {
        pt[i] = idx % m;
        idx /= m;
    }
}

/* Scans indices [0, count) with `check(pt)` built per worker by `make`;
 * returns the least failing index. */
template <class MakeCheck>
std::optional<u64> scan_residues(u64 count, u64 m, std::size_t n, MakeCheck make)
{
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (count < 4096)
        workers = 1;
    workers = static_cast<unsigned>(std::min<u64>(workers, 16));
    std::atomic<u64> best{std::numeric_limits<u64>::max()};
    auto body = [&](u64 lo, u64 hi) {
        auto check = make();
        std::vector<u64> pt(n);
        for (u64 idx = lo; idx < hi; ++idx) {
            if ((idx & 1023) == 0 && idx >= best.load(std::memory_order_relaxed))
                return;
            point_from_index(idx, m, n, pt.data());
            if (!check(pt.data())) {
                u64 cur = best.load();
                while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
                }
                return;
            }
        }
    };
    if (workers == 1) {
        body(0, count);
    } else {
        std::vector<std::thread> pool;
        u64 chunk = (count + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            u64 lo = w * chunk, hi = std::min(count, lo + chunk);
            if (lo < hi)
                pool.emplace_back(body, lo, hi);
        }
        for (auto& t : pool)
            t.join();
    }
    u64 b = best.load();
    if (b == std::numeric_limits<u64>::max())
        return std::nullopt;
    return b;
}

IntVector point_vector(u64 idx, u64 m, std::size_t n)
{
    std::vector<u64> pt(n);
    point_from_index(idx, m, n, pt.data());
    IntVector v;
    for (auto x : pt)
        v.emplace_back(static_cast<unsigned long>(x));
    return v;
}

/* Exact fallback for moduli beyond a machine word. */
std::optional<IntVector> scan_big(const ZOrder& a, const Integer& m, const std::function<bool(const IntVector&)>& check)
{
    std::size_t n = a.dim();
    IntVector pt(n, 0);
    while (true) {
        if (!check(pt))
            return pt;
        std::size_t i = 0;
        while (i < n && ++pt[i] == m)
            pt[i++] = 0;
        if (i == n)
            return std::nullopt;
    }
}

IntVector eval_mod_big(const ZOrder& a, const IntVector& g, const IntVector& x, const Integer& m)
{
    IntVector acc(a.dim(), 0);
    for (auto it = g.rbegin(); it != g.rend(); ++it) {
        acc = a.mul_mod(x, acc, m);
        for (std::size_t k = 0; k < a.dim(); ++k) {
            acc[k] += *it * a.one_coords()[k];
            mpz_fdiv_r(acc[k].get_mpz_t(), acc[k].get_mpz_t(), m.get_mpz_t());
        }
    }
    return acc;
}

constexpr u64 kWordLimit = u64(1) << 32;

} // namespace

std::uint64_t residue_count(const ZOrder& a, const RationalPolynomial& f)
{
    Integer d = f.denominator();
    if (d == 1)
        return 0;
    u64 total = 0;
    for (const auto& [q, k] : factor_integer(d))
        total = saturating_add(total, residues_for(ipow(q, k), a.dim()));
    return total;
}

OrderMembership int_member_order(const ZOrder& a, const RationalPolynomial& f, std::uint64_t budget)
{
    OrderMembership res;
    Integer d = f.denominator();
    if (d == 1)
        return res;
    u64 need = residue_count(a, f);
    if (need > budget)
        throw Error(ErrorCode::BudgetExceeded, "residue enumeration needs " + std::to_string(need) +
                                                   " evaluations, budget is " + std::to_string(budget));
    IntVector g = f.numerator();
    std::size_t n = a.dim();
    for (const auto& [q, k] : factor_integer(d)) {
        Integer mod = ipow(q, k);
        u64 count = residues_for(mod, n);
        res.residues_checked += count;
        if (mod < kWordLimit) {
            u64 m = mod.get_ui();
            WordAlgebra alg(a, m);
            std::vector<u64> gc = reduce_coeffs(g, m);
            auto fail = scan_residues(count, m, n, [&] {
                return [&, lm = std::vector<u64>(n * n), out = std::vector<u64>(n),
                        tmp = std::vector<u64>(n)](const u64* pt) mutable {
                    alg.left_matrix(pt, lm.data());
                    alg.evaluate(gc, lm.data(), out.data(), tmp.data());
                    for (auto v : out)
                        if (v != 0)
                            return false;
                    return true;
                };
            });
            if (fail) {
                res.member = false;
                res.failing_point = point_vector(*fail, m, n);
                return res;
            }
        } else {
            auto fail = scan_big(a, mod, [&](const IntVector& x) { return is_zero(eval_mod_big(a, g, x, mod)); });
            if (fail) {
                res.member = false;
                res.failing_point = *fail;
                return res;
            }
        }
    }
    return res;
}

std::uint64_t composite_residue_count(const ZOrder& a, const RationalPolynomial& inner, const RationalPolynomial& outer,
                                      int depth)
{
    Integer m = outer.denominator();
    if (m == 1)
        return 0;
    Integer du = inner.denominator();
    u64 total = 0;
    for (const auto& [q, k] : factor_integer(m)) {
        unsigned long w = mpz_divisible_p(du.get_mpz_t(), q.get_mpz_t()) ? valuation(du, q) : 0;
        total = saturating_add(total, residues_for(ipow(q, k * depth + w), a.dim()));
    }
    return total;
}

OrderMembership int_member_composite(const ZOrder& a, const RationalPolynomial& inner, const RationalPolynomial& outer,
                                     std::uint64_t budget, int depth)
{
    if (depth < 1)
        throw Error(ErrorCode::PreconditionFailed, "depth must be at least 1");
    OrderMembership res;
    Integer m = outer.denominator();
    if (m == 1)
        return res;
    u64 need = composite_residue_count(a, inner, outer, depth);
    if (need > budget)
        throw Error(ErrorCode::BudgetExceeded, "residue enumeration needs " + std::to_string(need) +
                                                   " evaluations, budget is " + std::to_string(budget));
    std::size_t n = a.dim();
    IntVector big_u = inner.numerator(), big_g = outer.numerator();
    Integer du = inner.denominator();
    for (const auto& [q, k] : factor_integer(m)) {
        unsigned long w = mpz_divisible_p(du.get_mpz_t(), q.get_mpz_t()) ? valuation(du, q) : 0;
        /* y_0 = inner(a) is needed modulo q^(k*depth); each application of
         * outer divides by q^k and costs one factor of the modulus. */
        Integer qw = ipow(q, w), qk = ipow(q, k), top = ipow(q, k * depth), mod = qw * top;
        Integer cof = du / qw, cof_inv, mcof = m / qk, mcof_inv;
        mpz_invert(cof_inv.get_mpz_t(), cof.get_mpz_t(), top.get_mpz_t());
        mpz_invert(mcof_inv.get_mpz_t(), mcof.get_mpz_t(), top.get_mpz_t());
        u64 count = residues_for(mod, n);
        res.residues_checked += count;

        /* 0 if a passes, -1 if inner(a) is not integral, else the failing depth. */
        auto check_big = [&](const IntVector& x) -> int {
            IntVector ux = eval_mod_big(a, big_u, x, mod);
            IntVector y(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (!mpz_divisible_p(ux[i].get_mpz_t(), qw.get_mpz_t()))
                    return -1;
                y[i] = (ux[i] / qw) * cof_inv;
                mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), top.get_mpz_t());
            }
            for (int j = 1; j <= depth; ++j) {
                IntVector z = eval_mod_big(a, big_g, y, top);
                for (std::size_t i = 0; i < n; ++i) {
                    if (!mpz_divisible_p(z[i].get_mpz_t(), qk.get_mpz_t()))
                        return j;
                    y[i] = (z[i] / qk) * mcof_inv;
                    mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), top.get_mpz_t());
                }
            }
            return 0;
        };

        std::optional<IntVector> fail;
        if (mod < kWordLimit) {
            u64 mw = mod.get_ui(), topw = top.get_ui(), qkw = qk.get_ui(), qww = qw.get_ui();
            u64 inv = cof_inv.get_ui(), minv = mcof_inv.get_ui();
            WordAlgebra alg_top(a, topw), alg_mod(a, mw);
            std::vector<u64> uc = reduce_coeffs(big_u, mw), gc = reduce_coeffs(big_g, topw);
            auto idx = scan_residues(count, mw, n, [&] {
                return [&, lm = std::vector<u64>(n * n), ux = std::vector<u64>(n), y = std::vector<u64>(n),
                        tmp = std::vector<u64>(n)](const u64* pt) mutable {
                    alg_mod.left_matrix(pt, lm.data());
                    alg_mod.evaluate(uc, lm.data(), ux.data(), tmp.data());
                    for (std::size_t i = 0; i < n; ++i) {
                        if (ux[i] % qww != 0)
                            return false;
                        y[i] = static_cast<u64>(static_cast<u128>(ux[i] / qww) * inv % topw);
                    }
                    for (int j = 1; j <= depth; ++j) {
                        alg_top.left_matrix(y.data(), lm.data());
                        alg_top.evaluate(gc, lm.data(), ux.data(), tmp.data());
                        for (std::size_t i = 0; i < n; ++i) {
                            if (ux[i] % qkw != 0)
                                return false;
                            y[i] = static_cast<u64>(static_cast<u128>(ux[i] / qkw) * minv % topw);
                        }
                    }
                    return true;
                };
            });
            if (idx)
                fail = point_vector(*idx, mw, n);
        } else {
            fail = scan_big(a, mod, [&](const IntVector& x) { return check_big(x) == 0; });
        }
        if (fail) {
            int why = check_big(*fail);
            if (why < 0)
                throw Error(ErrorCode::PreconditionFailed,
                            "inner polynomial is not integer valued at " + to_string(*fail));
            if (why == 0)
                throw Error(ErrorCode::InternalError, "residue scan and exact recheck disagree");
            res.member = false;
            res.failing_point = *fail;
            res.failing_depth = static_cast<unsigned>(why);
            return res;
        }
    }
    return res;
}

PointwiseResult pointwise_integrally_closed(const ZOrder& a, const AlgebraElement& x)
{
    if (!a.contains(x))
        throw Error(ErrorCode::PreconditionFailed, "pointwise test needs a in A");
    PointwiseResult res;
    res.minpoly = minimal_polynomial(a, x);
    std::size_t m = static_cast<std::size_t>(res.minpoly.degree());
    linalg::RatMatrix powers;
    AlgebraElement cur = a.one();
    for (std::size_t k = 0; k < m; ++k) {
        powers.push_back(cur.coords);
        cur = a.mul(cur, x);
    }
    res.intersection = lattice_intersect(IntegerLattice::standard(a.dim()), powers);

    if (!is_squarefree(res.minpoly)) {
        /* rad(mu)(a) is a nonzero nilpotent of Q[a]; half of its primitive
         * integral multiple is integral but not in A. */
        AlgebraElement nil = evaluate(a, squarefree_part(res.minpoly), x);
        IntVector num = nil.numerator();
        Integer c = content(num);
        for (auto& v : num)
            v /= c;
        res.closed = false;
        res.reason = PointwiseReason::NotReducedSubalgebra;
        res.witness = AlgebraElement(num) * Rational(1, 2);
        return res;
    }

    EmbeddedOrder r = order_from_lattice(a, linalg::to_rational(res.intersection.basis()), a.one());
    ClosednessResult cl = is_integrally_closed_order(r.order);
    res.integral_closure = linalg::multiply(cl.maximal.order.basis, r.basis);
    res.closed = cl.closed;
    if (!cl.closed) {
        res.reason = PointwiseReason::NotMaximal;
        res.witness = r.to_ambient(*cl.witness);
    }
    return res;
}

int RamificationProfile::field_degree() const
{
    int d = 0;
    for (auto [e, f] : primes)
        d += e * f;
    return d;
}

namespace {

void fill_profile(RamificationProfile& prof)
{
    std::set<int> es, fs;
    for (auto [e, f] : prof.primes) {
        es.insert(e);
        fs.insert(f);
    }
    prof.ram_indices.assign(es.begin(), es.end());
    prof.residue_degrees.assign(fs.begin(), fs.end());
    prof.e_max = *es.rbegin();
    prof.f_max = *fs.rbegin();
    prof.s = factorial(static_cast<unsigned long>(prof.e_max));
    Integer fe = factorial(static_cast<unsigned long>(prof.f_max));
    if (!fe.fits_ulong_p())
        throw Error(ErrorCode::DegreeTooLarge, "residue degree too large for r_p");
    prof.r = ipow(prof.p, fe.get_ui());
}

} // namespace

RamificationProfile ramification_profile(const ZOrder& maximal, const Integer& p)
{
    if (p < 2 || !mpz_probab_prime_p(p.get_mpz_t(), 30))
        throw Error(ErrorCode::PreconditionFailed, p.get_str() + " is not prime");
    if (!is_commutative(maximal).commutative)
        throw Error(ErrorCode::NotCommutative, "ramification needs a commutative order");
    if (!p.fits_ulong_p())
        throw Error(ErrorCode::PreconditionFailed, "prime too large");
    if (!is_p_maximal(maximal, p))
        throw Error(ErrorCode::PreconditionFailed, "order is not maximal at " + p.get_str());

    std::size_t n = maximal.dim();
    RamificationProfile prof;
    prof.p = p;
    bool found = for_each_primitive_candidate(maximal, 6, [&](const AlgebraElement& x, const RationalPolynomial& mu) {
        linalg::IntMatrix pw;
        AlgebraElement cur = maximal.one();
        for (std::size_t k = 0; k < n; ++k) {
            pw.push_back(to_integer(cur.coords));
            cur = maximal.mul(cur, x);
        }
        Integer idx = abs(linalg::determinant(pw));
        if (mpz_divisible_p(idx.get_mpz_t(), p.get_mpz_t()))
            return false;
        prof.generator = x;
        prof.defining_poly = mu;
        return true;
    });
    if (!found)
        throw Error(ErrorCode::IndexDivisible,
                    "every primitive element tried has equation-order index divisible by " + p.get_str());

    IntVector mu_int;
    for (const auto& c : prof.defining_poly.coefficients())
        mu_int.push_back(c.get_num());
    for (const auto& [g, mult] : modp::factor(mu_int, p.get_ui()))
        prof.primes.emplace_back(mult, modp::degree(g));
    fill_profile(prof);
    return prof;
}

RamificationProfile profile_from_ef(const Integer& p, int e, int f)
{
    if (p < 2 || !mpz_probab_prime_p(p.get_mpz_t(), 30))
        throw Error(ErrorCode::PreconditionFailed, p.get_str() + " is not prime");
    if (e < 1 || f < 1)
        throw Error(ErrorCode::PreconditionFailed, "e and f must be positive");
    RamificationProfile prof;
    prof.p = p;
    prof.primes.emplace_back(e, f);
    fill_profile(prof);
    return prof;
}

namespace {

unsigned long word(const Integer& x, const char* what)
{
    if (!x.fits_ulong_p())
        throw Error(ErrorCode::DegreeTooLarge, std::string(what) + " does not fit a machine word");
    return x.get_ui();
}

} // namespace

RationalPolynomial pruefer_outer(const RamificationProfile& prof)
{
    RationalPolynomial y = RationalPolynomial::x();
    RationalPolynomial base = y.pow(word(prof.r, "r")) - y;
    return base.pow(word(prof.s, "s")) * fraction(1, prof.p);
}

RationalPolynomial sequence_outer(const RamificationProfile& prof)
{
    RationalPolynomial y = RationalPolynomial::x();
    RationalPolynomial base = y.pow(word(prof.r, "r") - 1) - RationalPolynomial::constant(1);
    return y * base.pow(word(prof.s, "s")) * fraction(1, prof.p);
}

namespace {

constexpr long double kMaxTransformDegree = 1 << 16;

void check_degree(long double d)
{
    if (d > kMaxTransformDegree)
        throw Error(ErrorCode::DegreeTooLarge, "transform degree exceeds 65536");
}

} // namespace

RationalPolynomial pruefer_transform(const RationalPolynomial& f, const RamificationProfile& prof)
{
    check_degree(static_cast<long double>(std::max(f.degree(), 0)) * prof.r.get_d() * prof.s.get_d());
    RationalPolynomial base = f.pow(word(prof.r, "r")) - f;
    return base.pow(word(prof.s, "s")) * fraction(1, prof.p);
}

std::vector<RationalPolynomial> transform_sequence(const RationalPolynomial& f, const RamificationProfile& prof,
                                                   int k_max)
{
    if (k_max < 1)
        throw Error(ErrorCode::PreconditionFailed, "k_max must be at least 1");
    unsigned long r = word(prof.r, "r"), s = word(prof.s, "s");
    long double deg = static_cast<long double>(std::max(f.degree(), 0)) * s;
    for (int k = 0; k <= k_max; ++k, deg *= 1 + static_cast<long double>(r - 1) * s)
        check_degree(deg);
    std::vector<RationalPolynomial> seq{f.pow(s)};
    for (int k = 1; k <= k_max; ++k) {
        const RationalPolynomial& prev = seq.back();
        RationalPolynomial base = prev.pow(r - 1) - RationalPolynomial::constant(1);
        seq.push_back(prev * base.pow(s) * fraction(1, prof.p));
    }
    return seq;
}

std::optional<AlgebraElement> nilpotent_witness(const ZOrder& a, const Integer& p)
{
    if (is_commutative(a).commutative)
        return std::nullopt;
    if (!p.fits_slong_p())
        throw Error(ErrorCode::PreconditionFailed, "prime too large for the witness search");
    long bound = 2 * p.get_si();
    std::size_t n = a.dim();
    Integer p2 = p * p;
    auto coefficient_at = [](long k) { return k == 0 ? 0 : (k % 2 ? (k + 1) / 2 : -(k / 2)); };
    for (long norm = 1; norm <= bound; ++norm) {
        long width = 2 * norm + 1;
        std::vector<long> digit(n, 0);
        while (true) {
            IntVector c(n);
            bool on_shell = false, outside_pA = false;
            for (std::size_t i = 0; i < n; ++i) {
                long v = coefficient_at(digit[i]);
                c[i] = v;
                if (v == norm || v == -norm)
                    on_shell = true;
                if (!mpz_divisible_p(c[i].get_mpz_t(), p.get_mpz_t()))
                    outside_pA = true;
            }
            if (on_shell && outside_pA) {
                AlgebraElement x(c);
                AlgebraElement sq = a.mul(x, x);
                bool ok = true;
                for (const auto& v : sq.coords)
                    if (!mpz_divisible_p(v.get_num_mpz_t(), p2.get_mpz_t())) {
                        ok = false;
                        break;
                    }
                if (ok)
                    return x;
            }
            std::size_t i = 0;
            while (i < n && ++digit[i] == width)
                digit[i++] = 0;
            if (i == n)
                break;
        }
    }
    return std::nullopt;
}

} // namespace ivp
