#ifndef IVP_HURWITZ_HPP_
#define IVP_HURWITZ_HPP_

#include "ivp/rational.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ivp {

/* a0 + a1 i + a2 j + a3 k in the rational Hamilton quaternions. */
struct Quaternion {
    std::array<Rational, 4> a{};

    Quaternion() = default;
    Quaternion(Rational a0, Rational a1, Rational a2, Rational a3) : a{a0, a1, a2, a3} {}

    Rational norm() const;
    Rational trace() const { return 2 * a[0]; }
    Quaternion conjugate() const;

    Quaternion operator+(const Quaternion& o) const;
    Quaternion operator-(const Quaternion& o) const;
    Quaternion operator*(const Quaternion& o) const;
    Quaternion operator*(const Rational& c) const;
    bool operator==(const Quaternion& o) const { return a == o.a; }

    std::string to_string() const;
};

/* (1 + i + j + k) / 2 */
Quaternion hurwitz_unit();

/* q in Z_(2): odd denominator. */
bool in_z2(const Rational& q);

/* alpha in the Hurwitz order over Z_(2): all coordinates in Z_(2), or all
 * in Z_(2) + 1/2. */
bool hurwitz_member(const Quaternion& alpha);

/* alpha is a root of X^2 - tr(alpha) X + N(alpha), so it is integral over
 * Z_(2) iff trace and norm lie in Z_(2). */
bool quaternion_integral(const Quaternion& alpha);

struct ClosureReport {
    std::uint64_t samples = 0;
    std::uint64_t integral = 0;
    std::uint64_t members = 0;
    std::vector<Quaternion> counterexamples; // integral but not members

    bool passed() const { return counterexamples.empty(); }
};

/* Seeded samples (a0 + a1 i + a2 j + a3 k) / (2^n e), |a_i| <= 50, n <= 4,
 * e odd in [1, 9]. */
ClosureReport closure_check(std::uint64_t samples, std::uint64_t seed);
/* The same check over a given list. */
ClosureReport closure_check(const std::vector<Quaternion>& alphas);

struct FourSquareReport {
    int n = 0;
    std::uint64_t tuples = 0;    // (4^n)^4
    std::uint64_t solutions = 0; // a^2+b^2+c^2+d^2 = 0 mod 4^n
    std::uint64_t violations = 0;
    std::vector<std::array<int, 4>> examples; // first violations, at most 16

    bool passed() const { return violations == 0; }
};

/* Exhaustively checks that a^2+b^2+c^2+d^2 = 0 mod 4^n forces a, b, c, d
 * even, over [0, 4^n)^4. n must be 2 or 3; `diagnostic` also admits n = 1,
 * where the statement fails. */
FourSquareReport four_square_lemma_check(int n, bool diagnostic = false);

/* Samples Hurwitz members of both types (integral and half-integral
 * coordinates, odd denominators) and checks N(alpha) in Z_(2). */
bool norm_in_D_check(std::uint64_t samples, std::uint64_t seed = 1);

struct OddGridReport {
    std::uint64_t points = 0;
    std::uint64_t not_member = 0;   // (a0+a1i+a2j+a3k)/(2e) outside the order
    std::uint64_t not_integral = 0; // member but not integral
};

/* a_i in {-3,-1,1,3,5}, e odd in [-9, 9]. */
OddGridReport odd_grid_check();

} // namespace ivp

#endif
