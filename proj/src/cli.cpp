#include "ivp/cli.hpp"

#include "ivp/closure.hpp"
#include "ivp/decision.hpp"
#include "ivp/error.hpp"
#include "ivp/hurwitz.hpp"
#include "ivp/membership.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace ivp {

namespace {

using ojson = nlohmann::ordered_json;

ojson coords_json(const RatVector& v)
{
    ojson a = ojson::array();
    for (const auto& x : v)
        a.push_back(to_string(x));
    return a;
}

ojson matrix_json(const linalg::RatMatrix& m)
{
    ojson a = ojson::array();
    for (const auto& row : m)
        a.push_back(coords_json(row));
    return a;
}

ojson int_matrix_json(const linalg::IntMatrix& m)
{
    ojson a = ojson::array();
    for (const auto& row : m)
        a.push_back(coords_json(to_rational(row)));
    return a;
}

/* "1/2 + 1/2*sqrt5" in the basis names of A. */
std::string format_element(const ZOrder& a, const AlgebraElement& x)
{
    std::string s;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        Rational c = x.coords[i];
        if (c == 0)
            continue;
        const std::string& name = a.basis_names()[i];
        bool unit = name == "1";
        if (!s.empty()) {
            s += c < 0 ? " - " : " + ";
            c = abs(c);
        }
        if (unit)
            s += c.get_str();
        else if (c == 1)
            s += name;
        else if (c == -1)
            s += "-" + name;
        else
            s += c.get_str() + "*" + name;
    }
    return s.empty() ? "0" : s;
}

AlgebraElement parse_point(const ZOrder& a, const std::string& text)
{
    RatVector v = parse_rational_list(text);
    if (v.size() != a.dim())
        throw Error(ErrorCode::DimensionMismatch, "point '" + text + "' has " + std::to_string(v.size()) +
                                                      " coordinates, the order has dimension " +
                                                      std::to_string(a.dim()));
    return AlgebraElement(v);
}

Integer parse_prime(const std::string& text)
{
    Rational q = parse_rational(text);
    if (!is_integral(q) || q < 2 || !mpz_probab_prime_p(q.get_num_mpz_t(), 30))
        throw Error(ErrorCode::MalformedInput, "'" + text + "' is not a prime");
    return q.get_num();
}

void emit(std::ostream& out, const ojson& j) { out << j.dump(2) << '\n'; }

struct Context {
    std::ostream& out;
    std::ostream& err;
    bool json = false;
};

/* ---- subcommands ------------------------------------------------------ */

int cmd_analyze(Context& cx, const std::string& path)
{
    ZOrder a = load_order_file(path);
    PrueferCertificate cert = decide_pruefer(a);
    bool verified = cert.verdict != Verdict::Indeterminate && verify_certificate(a, cert);
    if (cert.verdict != Verdict::Indeterminate && !verified)
        throw Error(ErrorCode::InternalError, "certificate failed its own verification");
    if (cx.json) {
        ojson j = certificate_to_json(cert);
        j["verified"] = verified;
        emit(cx.out, j);
    } else {
        cx.out << "verdict: " << verdict_name(cert.verdict) << '\n';
        cx.out << "reason: " << reason_name(cert.reason) << '\n';
        if (cert.pair) {
            auto [i, j] = *cert.pair;
            cx.out << "witness: " << a.basis_names()[i] << "*" << a.basis_names()[j]
                   << " != " << a.basis_names()[j] << "*" << a.basis_names()[i] << '\n';
        }
        if (cert.element) {
            cx.out << "witness: " << format_element(a, *cert.element) << "  " << cert.element->to_string() << '\n';
            if (cert.minpoly)
                cx.out << "witness minimal polynomial: " << cert.minpoly->to_string() << '\n';
            if (cert.nilpotency_index)
                cx.out << "nilpotency index: " << cert.nilpotency_index << '\n';
        }
        for (std::size_t i = 0; i < cert.components.size(); ++i) {
            const auto& pr = cert.components[i];
            cx.out << "component " << i << ": idempotent " << format_element(a, pr.idempotent) << ", field "
                   << pr.minpoly.to_string() << ", discriminant " << pr.discriminant.get_str() << '\n';
        }
        if (!cert.detail.empty())
            cx.out << "detail: " << cert.detail << '\n';
        cx.out << "citation: " << cert.citation << '\n';
        if (cert.verdict != Verdict::Indeterminate)
            cx.out << "verified: " << (verified ? "yes" : "no") << '\n';
    }
    switch (cert.verdict) {
    case Verdict::Yes:
        return kExitOk;
    case Verdict::No:
        return kExitNo;
    default:
        return kExitIndeterminate;
    }
}

int cmd_verify(Context& cx, const std::string& order_path, const std::string& cert_path)
{
    ZOrder a = load_order_file(order_path);
    std::ifstream in(cert_path);
    if (!in)
        throw Error(ErrorCode::MalformedInput, "cannot open " + cert_path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedCertificate, e.what());
    }
    bool ok = verify_certificate(a, certificate_from_json(doc));
    if (cx.json)
        emit(cx.out, ojson{{"valid", ok}});
    else
        cx.out << "certificate " << (ok ? "valid" : "rejected") << '\n';
    return ok ? kExitOk : kExitNo;
}

int cmd_minpoly(Context& cx, const std::string& path, const std::string& at)
{
    ZOrder a = load_order_file(path);
    AlgebraElement x = parse_point(a, at);
    IntegralityVerdict v = is_integral(a, x);
    if (cx.json) {
        ojson j;
        j["element"] = coords_json(x.coords);
        j["minpoly"] = v.minpoly.to_string();
        j["integral"] = v.integral;
        j["in_order"] = v.in_A;
        emit(cx.out, j);
    } else {
        cx.out << "element: " << format_element(a, x) << '\n';
        cx.out << "minimal polynomial: " << v.minpoly.to_string() << '\n';
        cx.out << "integral over Z: " << (v.integral ? "yes" : "no") << '\n';
        cx.out << "in order: " << (v.in_A ? "yes" : "no") << '\n';
    }
    return kExitOk;
}

int cmd_member(Context& cx, const std::string& path, const std::string& poly, const std::vector<std::string>& at,
               bool all, std::optional<std::uint64_t> budget)
{
    ZOrder a = load_order_file(path);
    RationalPolynomial f = parse_polynomial(poly);
    if (all == !at.empty())
        throw CLI::ValidationError("member", "give either --at or --all");
    ojson j;
    j["polynomial"] = f.to_string();
    if (!all) {
        std::vector<AlgebraElement> pts;
        for (const auto& s : at)
            pts.push_back(parse_point(a, s));
        FiniteMembership r = int_member_finite(a, pts, f);
        j["member"] = r.member;
        if (!r.member) {
            j["failing_point"] = coords_json(pts[*r.failing_index].coords);
            j["value"] = coords_json(r.failing_value.coords);
        }
        if (cx.json) {
            emit(cx.out, j);
        } else {
            cx.out << "member=" << (r.member ? "true" : "false") << '\n';
            if (!r.member)
                cx.out << "f(" << format_element(a, pts[*r.failing_index]) << ") = "
                       << format_element(a, r.failing_value) << " is not in the order\n";
        }
        return r.member ? kExitOk : kExitNo;
    }
    std::uint64_t b = budget ? *budget : residue_budget_from_env();
    OrderMembership r = int_member_order(a, f, b);
    j["member"] = r.member;
    j["residues_checked"] = r.residues_checked;
    if (r.failing_point) {
        AlgebraElement x(*r.failing_point);
        j["failing_point"] = coords_json(x.coords);
        j["value"] = coords_json(evaluate(a, f, x).coords);
    }
    if (cx.json) {
        emit(cx.out, j);
    } else {
        cx.out << "member=" << (r.member ? "true" : "false") << '\n';
        if (r.failing_point) {
            AlgebraElement x(*r.failing_point);
            cx.out << "f(" << format_element(a, x) << ") = " << format_element(a, evaluate(a, f, x))
                   << " is not in the order\n";
        }
        cx.out << "residues checked: " << r.residues_checked << '\n';
    }
    return r.member ? kExitOk : kExitNo;
}

const char* pointwise_reason(PointwiseReason r)
{
    switch (r) {
    case PointwiseReason::Closed:
        return "CLOSED";
    case PointwiseReason::NotReducedSubalgebra:
        return "NOT_REDUCED";
    case PointwiseReason::NotMaximal:
        return "NOT_MAXIMAL";
    }
    return "?";
}

int cmd_pointwise(Context& cx, const std::string& path, const std::string& at)
{
    ZOrder a = load_order_file(path);
    AlgebraElement x = parse_point(a, at);
    PointwiseResult r = pointwise_integrally_closed(a, x);
    if (cx.json) {
        ojson j;
        j["element"] = coords_json(x.coords);
        j["closed"] = r.closed;
        j["reason"] = pointwise_reason(r.reason);
        j["minpoly"] = r.minpoly.to_string();
        j["intersection"] = int_matrix_json(r.intersection.basis());
        if (r.witness) {
            j["witness"] = coords_json(r.witness->coords);
            j["witness_minpoly"] = minimal_polynomial(a, *r.witness).to_string();
        }
        emit(cx.out, j);
    } else {
        cx.out << "minimal polynomial: " << r.minpoly.to_string() << '\n';
        cx.out << "A cap Q[a] integrally closed: " << (r.closed ? "yes" : "no") << '\n';
        if (r.witness) {
            cx.out << "witness: " << format_element(a, *r.witness) << "  " << r.witness->to_string() << '\n';
            cx.out << "witness minimal polynomial: " << minimal_polynomial(a, *r.witness).to_string() << '\n';
        }
    }
    return r.closed ? kExitOk : kExitNo;
}

int cmd_maximal(Context& cx, const std::string& path)
{
    ZOrder a = load_order_file(path);
    ClosednessResult r = is_integrally_closed_order(a);
    const MaximalOrderResult& m = r.maximal;
    if (cx.json) {
        ojson j;
        j["basis"] = matrix_json(m.order.basis);
        j["index"] = m.index.get_str();
        j["disc_input"] = m.disc_input.get_str();
        j["disc_maximal"] = m.disc_maximal.get_str();
        ojson ps = ojson::array();
        for (const auto& p : m.primes)
            ps.push_back(p.get_str());
        j["primes"] = ps;
        j["maximal"] = r.closed;
        if (r.witness)
            j["witness"] = coords_json(r.witness->coords);
        emit(cx.out, j);
    } else {
        cx.out << "maximal order basis (in the input basis):\n";
        for (const auto& row : m.order.basis)
            cx.out << "  " << format_element(a, AlgebraElement(row)) << '\n';
        cx.out << "index: " << m.index.get_str() << '\n';
        cx.out << "discriminant: " << m.disc_input.get_str() << " -> " << m.disc_maximal.get_str() << '\n';
        cx.out << "input is maximal: " << (r.closed ? "yes" : "no") << '\n';
        if (r.witness)
            cx.out << "witness: " << format_element(a, *r.witness) << '\n';
    }
    return kExitOk;
}

ojson int_list(const std::vector<int>& v)
{
    ojson a = ojson::array();
    for (int x : v)
        a.push_back(x);
    return a;
}

std::string join(const std::vector<int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return "{" + s + "}";
}

int cmd_ramify(Context& cx, const std::string& path, const std::string& prime)
{
    ZOrder a = load_order_file(path);
    RamificationProfile prof = ramification_profile(a, parse_prime(prime));
    if (cx.json) {
        ojson j;
        j["p"] = prof.p.get_str();
        ojson primes = ojson::array();
        for (auto [e, f] : prof.primes)
            primes.push_back({{"e", e}, {"f", f}});
        j["primes"] = primes;
        j["E"] = int_list(prof.ram_indices);
        j["F"] = int_list(prof.residue_degrees);
        j["s"] = prof.s.get_str();
        j["r"] = prof.r.get_str();
        j["generator"] = coords_json(prof.generator->coords);
        j["defining_poly"] = prof.defining_poly.to_string();
        emit(cx.out, j);
    } else {
        cx.out << "p = " << prof.p.get_str() << '\n';
        cx.out << "generator: " << format_element(a, *prof.generator) << " with minimal polynomial "
               << prof.defining_poly.to_string() << '\n';
        for (auto [e, f] : prof.primes)
            cx.out << "  prime above p: e = " << e << ", f = " << f << '\n';
        cx.out << "E = " << join(prof.ram_indices) << ", F = " << join(prof.residue_degrees) << ", s = "
               << prof.s.get_str() << ", r = " << prof.r.get_str() << '\n';
    }
    return kExitOk;
}

int cmd_transform(Context& cx, const std::string& prime, const std::string& ef, const std::string& poly,
                  std::optional<int> sequence, const std::string& order_path, std::optional<std::uint64_t> budget)
{
    RatVector efv = parse_rational_list(ef);
    if (efv.size() != 2 || !is_integral(efv[0]) || !is_integral(efv[1]) || !efv[0].get_num().fits_sint_p() ||
        !efv[1].get_num().fits_sint_p())
        throw Error(ErrorCode::MalformedInput, "--ef expects two integers e,f");
    RamificationProfile prof =
        profile_from_ef(parse_prime(prime), static_cast<int>(efv[0].get_num().get_si()),
                        static_cast<int>(efv[1].get_num().get_si()));
    RationalPolynomial f = parse_polynomial(poly);

    std::vector<RationalPolynomial> outs;
    RationalPolynomial outer;
    if (sequence) {
        outs = transform_sequence(f, prof, *sequence);
        outer = sequence_outer(prof);
    } else {
        outs = {pruefer_transform(f, prof)};
        outer = pruefer_outer(prof);
    }

    std::optional<ZOrder> a;
    if (!order_path.empty())
        a = load_order_file(order_path);
    std::uint64_t b = budget ? *budget : residue_budget_from_env();
    /* Each output is outer(previous); the sequence starts from f^s. */
    std::vector<std::optional<bool>> member(outs.size());
    if (a) {
        if (!int_member_order(*a, f, b).member)
            throw Error(ErrorCode::PreconditionFailed, "f is not integer valued on the order");
        int depth = sequence ? *sequence : 1;
        OrderMembership r = int_member_composite(*a, sequence ? outs[0] : f, outer, b, depth);
        for (std::size_t i = 0; i < outs.size(); ++i) {
            std::size_t j = sequence ? i : 1; // number of applications of outer
            if (r.member || j < r.failing_depth)
                member[i] = true;
            else if (j == r.failing_depth)
                member[i] = false; // later entries are left undecided
        }
    }

    if (cx.json) {
        ojson j;
        j["p"] = prof.p.get_str();
        j["s"] = prof.s.get_str();
        j["r"] = prof.r.get_str();
        ojson arr = ojson::array();
        for (std::size_t i = 0; i < outs.size(); ++i) {
            ojson e;
            e["polynomial"] = outs[i].to_string();
            if (member[i])
                e["member"] = *member[i];
            arr.push_back(e);
        }
        if (sequence)
            j["sequence"] = arr;
        else
            j["transform"] = arr[0];
        emit(cx.out, j);
    } else {
        cx.out << "s = " << prof.s.get_str() << ", r = " << prof.r.get_str() << '\n';
        for (std::size_t i = 0; i < outs.size(); ++i) {
            cx.out << (sequence ? "f_" + std::to_string(i) : std::string("transform")) << " = "
                   << outs[i].to_string();
            if (member[i])
                cx.out << "  [member=" << (*member[i] ? "true" : "false") << "]";
            cx.out << '\n';
        }
    }
    for (const auto& m : member)
        if (m && !*m)
            return kExitNo;
    return kExitOk;
}

int cmd_hurwitz_check(Context& cx, const std::string& q)
{
    if (!q.empty()) {
        RatVector v = parse_rational_list(q);
        if (v.size() != 4)
            throw Error(ErrorCode::DimensionMismatch, "a quaternion has four coordinates");
        Quaternion alpha(v[0], v[1], v[2], v[3]);
        bool member = hurwitz_member(alpha), integral = quaternion_integral(alpha);
        if (cx.json) {
            ojson j;
            j["quaternion"] = coords_json(v);
            j["norm"] = to_string(alpha.norm());
            j["trace"] = to_string(alpha.trace());
            j["integral"] = integral;
            j["member"] = member;
            emit(cx.out, j);
        } else {
            cx.out << "norm " << alpha.norm().get_str() << ", trace " << alpha.trace().get_str() << '\n';
            cx.out << "integral over Z_(2): " << (integral ? "yes" : "no") << '\n';
            cx.out << "in the Hurwitz order over Z_(2): " << (member ? "yes" : "no") << '\n';
        }
        return integral && !member ? kExitNo : kExitOk;
    }
    OddGridReport grid = odd_grid_check();
    bool norms = norm_in_D_check(10000, 1);
    bool ok = grid.not_member == 0 && grid.not_integral == 0 && norms;
    if (cx.json) {
        ojson j;
        j["odd_grid_points"] = grid.points;
        j["odd_grid_not_member"] = grid.not_member;
        j["odd_grid_not_integral"] = grid.not_integral;
        j["norm_in_D"] = norms;
        j["passed"] = ok;
        emit(cx.out, j);
    } else {
        cx.out << "odd grid: " << grid.points << " points, " << grid.not_member << " outside the order, "
               << grid.not_integral << " members not integral\n";
        cx.out << "norms of sampled members in Z_(2): " << (norms ? "yes" : "no") << '\n';
        cx.out << (ok ? "pass" : "FAIL") << '\n';
    }
    return ok ? kExitOk : kExitNo;
}

int cmd_four_squares(Context& cx, int n, bool diagnostic)
{
    FourSquareReport r = four_square_lemma_check(n, diagnostic);
    if (cx.json) {
        ojson j;
        j["n"] = r.n;
        j["tuples"] = r.tuples;
        j["solutions"] = r.solutions;
        j["violations"] = r.violations;
        ojson ex = ojson::array();
        for (const auto& t : r.examples)
            ex.push_back({t[0], t[1], t[2], t[3]});
        j["examples"] = ex;
        j["passed"] = r.passed();
        emit(cx.out, j);
    } else {
        cx.out << "modulus 4^" << n << ": " << r.tuples << " tuples, " << r.solutions << " solutions, "
               << r.violations << " with an odd entry\n";
        for (const auto& t : r.examples)
            cx.out << "  (" << t[0] << ", " << t[1] << ", " << t[2] << ", " << t[3] << ")\n";
        cx.out << (r.passed() ? "pass" : "fail") << '\n';
    }
    return r.passed() ? kExitOk : kExitNo;
}

int cmd_hurwitz_closure(Context& cx, std::uint64_t samples, std::uint64_t seed)
{
    ClosureReport r = closure_check(samples, seed);
    if (cx.json) {
        ojson j;
        j["samples"] = r.samples;
        j["integral"] = r.integral;
        j["members"] = r.members;
        ojson ce = ojson::array();
        for (const auto& q : r.counterexamples)
            ce.push_back(coords_json(RatVector(q.a.begin(), q.a.end())));
        j["counterexamples"] = ce;
        j["passed"] = r.passed();
        emit(cx.out, j);
    } else {
        cx.out << r.samples << " samples, " << r.integral << " integral, " << r.members << " in the order, "
               << r.counterexamples.size() << " integral but outside\n";
        for (const auto& q : r.counterexamples)
            cx.out << "  counterexample " << q.to_string() << '\n';
        cx.out << (r.passed() ? "pass" : "FAIL") << '\n';
    }
    return r.passed() ? kExitOk : kExitNo;
}

/* ---- examples --------------------------------------------------------- */

ZOrder m2z()
{
    ZOrder::Table t(4, std::vector<IntVector>(4, IntVector(4, 0)));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int d = 0; d < 2; ++d)
                t[2 * a + b][2 * b + d][2 * a + d] = 1;
    return ZOrder({"e11", "e12", "e21", "e22"}, {1, 0, 0, 1}, t);
}

AlgebraElement mat(long a, long b, long c, long d) { return AlgebraElement(IntVector{a, b, c, d}); }

struct ExampleRow {
    std::string name;
    bool passed;
};

std::vector<ExampleRow> run_examples()
{
    std::vector<ExampleRow> rows;
    auto add = [&](std::string name, const std::function<bool()>& check) {
        bool ok = false;
        try {
            ok = check();
        } catch (const std::exception&) {
            ok = false;
        }
        rows.push_back({std::move(name), ok});
    };
    ZOrder a = m2z();
    RationalPolynomial golden = parse_polynomial("X^2 - X - 1");

    add("2x2 matrices: a = [[0,4],[1,2]] gives A cap Q[a] not integrally closed, witness root of X^2-X-1", [&] {
        PointwiseResult r = pointwise_integrally_closed(a, mat(0, 4, 1, 2));
        return !r.closed && r.witness && minimal_polynomial(a, *r.witness) == golden;
    });
    add("2x2 matrices: b = [[0,2],[2,2]] gives A cap Q[b] integrally closed",
        [&] { return pointwise_integrally_closed(a, mat(0, 2, 2, 2)).closed; });
    add("2x2 matrices: X/2 is not integer valued at a, and (X^2-X-1)(b/2) = 0",
        [&] {
            RationalPolynomial half = parse_polynomial("1/2*X");
            AlgebraElement hb = mat(0, 1, 1, 1);
            return !int_member_finite(a, {mat(0, 4, 1, 2)}, half).member &&
                   int_member_finite(a, {mat(0, 2, 2, 2)}, half).member &&
                   evaluate(a, golden, hb).is_zero();
        });
    for (long k = 1; k <= 3; ++k) {
        RationalPolynomial f = (RationalPolynomial::x() - RationalPolynomial::constant(k)) * fraction(1, 2 * k);
        std::string ks = std::to_string(k);
        add("2x2 matrices, k = " + ks + ": (X-k)/2k integer valued at diag(k,-k), not at antidiag(k,k)", [&] {
            return int_member_finite(a, {mat(k, 0, 0, -k)}, f).member &&
                   !int_member_finite(a, {mat(0, k, k, 0)}, f).member;
        });
        add("2x2 matrices, k = " + ks + ": A cap Q[antidiag] not integrally closed, A cap Q[diag] closed", [&] {
            return !pointwise_integrally_closed(a, mat(0, k, k, 0)).closed &&
                   pointwise_integrally_closed(a, mat(k, 0, 0, -k)).closed;
        });
    }
    add("Hurwitz unit (1+i+j+k)/2 is integral (root of X^2-X+1) and in the order", [] {
        Quaternion h = hurwitz_unit();
        return quaternion_integral(h) && hurwitz_member(h) && h.trace() == 1 && h.norm() == 1;
    });
    add("(1+i)/2 is not in the Hurwitz order; 3/5 + i is",
        [] {
            return !hurwitz_member(Quaternion(fraction(1, 2), fraction(1, 2), 0, 0)) &&
                   hurwitz_member(Quaternion(fraction(3, 5), 1, 0, 0));
        });
    add("four squares mod 16 and mod 64 force even entries",
        [] { return four_square_lemma_check(2).passed() && four_square_lemma_check(3).passed(); });
    add("mod 4 the four-square statement fails (1+1+1+1 = 4)",
        [] { return !four_square_lemma_check(1, true).passed(); });
    add("odd coordinates over 2e give Hurwitz members with norm in Z_(2)", [] {
        OddGridReport g = odd_grid_check();
        return g.not_member == 0 && g.not_integral == 0;
    });
    add("10^4 seeded quaternions: integral over Z_(2) implies Hurwitz member",
        [] { return closure_check(10000, 1).passed(); });
    return rows;
}

int cmd_examples(Context& cx)
{
    std::vector<ExampleRow> rows = run_examples();
    bool all = std::all_of(rows.begin(), rows.end(), [](const ExampleRow& r) { return r.passed; });
    if (cx.json) {
        ojson arr = ojson::array();
        for (const auto& r : rows)
            arr.push_back({{"example", r.name}, {"passed", r.passed}});
        emit(cx.out, ojson{{"examples", arr}, {"passed", all}});
    } else {
        for (const auto& r : rows)
            cx.out << (r.passed ? "PASS  " : "FAIL  ") << r.name << '\n';
    }
    return all ? kExitOk : kExitNo;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Integer-valued polynomials on Z-orders: Pruefer decision and certificates", "ivp"};
    app.require_subcommand(1);
    Context cx{out, err};
    std::function<int()> action;

    auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", cx.json, "Machine-readable output"); };

    std::string order_path, cert_path, at, poly, prime, ef, quat;
    std::vector<std::string> at_list;
    bool all = false, diagnostic = false;
    std::optional<std::uint64_t> budget;
    std::optional<int> sequence;
    int squares_n = 2;
    std::uint64_t samples = 10000, seed = 1;

    auto* analyze = app.add_subcommand("analyze", "Decide whether Int_Q(A) is Pruefer and verify the certificate");
    analyze->add_option("order", order_path, "Order JSON file")->required();
    json_flag(analyze);
    analyze->callback([&] { action = [&] { return cmd_analyze(cx, order_path); }; });

    auto* verify = app.add_subcommand("verify", "Check a certificate against an order");
    verify->add_option("order", order_path, "Order JSON file")->required();
    verify->add_option("certificate", cert_path, "Certificate JSON file")->required();
    json_flag(verify);
    verify->callback([&] { action = [&] { return cmd_verify(cx, order_path, cert_path); }; });

    auto* minpoly = app.add_subcommand("minpoly", "Minimal polynomial of an element");
    minpoly->add_option("order", order_path, "Order JSON file")->required();
    minpoly->add_option("--at", at, "Coordinates, comma separated")->required();
    json_flag(minpoly);
    minpoly->callback([&] { action = [&] { return cmd_minpoly(cx, order_path, at); }; });

    auto* member = app.add_subcommand("member", "Integer-valuedness of a polynomial on points or on the whole order");
    member->add_option("order", order_path, "Order JSON file")->required();
    member->add_option("--poly", poly, "Polynomial, e.g. \"1/2*X^2 - 1/2*X\"")->required();
    auto* at_opt = member->add_option("--at", at_list, "Point coordinates (repeatable)");
    auto* all_opt = member->add_flag("--all", all, "Test f(A) in A by residue enumeration");
    at_opt->excludes(all_opt);
    member->add_option("--budget", budget, "Residue budget (default: IVP_BUDGET or 1000000)");
    json_flag(member);
    member->callback([&] { action = [&] { return cmd_member(cx, order_path, poly, at_list, all, budget); }; });

    auto* pointwise = app.add_subcommand("pointwise", "Is A cap Q[a] integrally closed?");
    pointwise->add_option("order", order_path, "Order JSON file")->required();
    pointwise->add_option("--at", at, "Coordinates of a")->required();
    json_flag(pointwise);
    pointwise->callback([&] { action = [&] { return cmd_pointwise(cx, order_path, at); }; });

    auto* maximal = app.add_subcommand("maximal-order", "Maximal order containing a commutative order");
    maximal->add_option("order", order_path, "Order JSON file")->required();
    json_flag(maximal);
    maximal->callback([&] { action = [&] { return cmd_maximal(cx, order_path); }; });

    auto* ramify = app.add_subcommand("ramify", "Ramification of p in a maximal order of a number field");
    ramify->add_option("order", order_path, "Order JSON file")->required();
    ramify->add_option("--prime", prime, "Prime p")->required();
    json_flag(ramify);
    ramify->callback([&] { action = [&] { return cmd_ramify(cx, order_path, prime); }; });

    auto* transform = app.add_subcommand("transform", "(f^r - f)^s / p, or the sequence f_k");
    transform->add_option("--prime", prime, "Prime p")->required();
    transform->add_option("--ef", ef, "Ramification index and residue degree, e.g. 2,1")->required();
    transform->add_option("--poly", poly, "Polynomial f")->required();
    transform->add_option("--sequence", sequence, "Compute f_0 .. f_k instead")->check(CLI::Range(1, 64));
    transform->add_option("--order", order_path, "Also test membership in Int_Q of this order");
    transform->add_option("--budget", budget, "Residue budget for --order");
    json_flag(transform);
    transform->callback(
        [&] { action = [&] { return cmd_transform(cx, prime, ef, poly, sequence, order_path, budget); }; });

    auto* hurwitz = app.add_subcommand("hurwitz", "Hurwitz quaternions over Z_(2)");
    hurwitz->require_subcommand(1);
    auto* hcheck = hurwitz->add_subcommand("check", "Odd-grid and norm checks, or one quaternion with --q");
    hcheck->add_option("--q", quat, "a0,a1,a2,a3");
    json_flag(hcheck);
    hcheck->callback([&] { action = [&] { return cmd_hurwitz_check(cx, quat); }; });
    auto* hsquares = hurwitz->add_subcommand("four-squares", "Four squares = 0 mod 4^n forces even entries");
    hsquares->add_option("--n", squares_n, "n (2 or 3)")->required();
    hsquares->add_flag("--diagnostic", diagnostic, "Allow n = 1 and list violations");
    json_flag(hsquares);
    hsquares->callback([&] { action = [&] { return cmd_four_squares(cx, squares_n, diagnostic); }; });
    auto* hclosure = hurwitz->add_subcommand("closure", "Random integral quaternions lie in the Hurwitz order");
    hclosure->add_option("--samples", samples, "Number of samples")->check(CLI::PositiveNumber);
    hclosure->add_option("--seed", seed, "Seed");
    json_flag(hclosure);
    hclosure->callback([&] { action = [&] { return cmd_hurwitz_closure(cx, samples, seed); }; });

    auto* examples = app.add_subcommand("examples", "Run the worked examples and print a pass/fail table");
    json_flag(examples);
    examples->callback([&] { action = [&] { return cmd_examples(cx); }; });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        return action ? action() : kExitUsage;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (is_resource_error(e.code()))
            return kExitIndeterminate;
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

} // namespace ivp
