#include "ivp/decision.hpp"

#include "ivp/closure.hpp"
#include "ivp/decomposition.hpp"
#include "ivp/error.hpp"
#include "ivp/factor.hpp"

namespace ivp {

std::string verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Yes:
        return "YES";
    case Verdict::No:
        return "NO";
    case Verdict::Indeterminate:
        return "INDETERMINATE";
    }
    return "?";
}

std::string reason_name(Reason r)
{
    switch (r) {
    case Reason::Noncommutative:
        return "NONCOMMUTATIVE";
    case Reason::NotReduced:
        return "NOT_REDUCED";
    case Reason::IdempotentEscapes:
        return "IDEMPOTENT_ESCAPES";
    case Reason::ComponentNotMaximal:
        return "COMPONENT_NOT_MAXIMAL";
    case Reason::AllComponentsMaximal:
        return "ALL_COMPONENTS_MAXIMAL";
    case Reason::ResourceExhausted:
        return "RESOURCE_EXHAUSTED";
    }
    return "?";
}

namespace {

const char* citation_for(Reason r)
{
    switch (r) {
    case Reason::Noncommutative:
        return "Z is semiprimitive, so Int_Q(A) Pruefer forces A commutative";
    case Reason::NotReduced:
        return "Int_Q(A) Pruefer forces A reduced; a nonzero nilpotent is integral over Z";
    case Reason::IdempotentEscapes:
    case Reason::ComponentNotMaximal:
        return "Int_Q(A) Pruefer forces A integrally closed; the witness is integral over Z and not in A";
    case Reason::AllComponentsMaximal:
        return "A is a finite product of maximal orders of number fields, so Int_Q(A) is Pruefer";
    case Reason::ResourceExhausted:
        return "no verdict: resource limit reached";
    }
    return "";
}

void set_no(PrueferCertificate& c, Reason r)
{
    c.verdict = Verdict::No;
    c.reason = r;
    c.citation = citation_for(r);
}

std::vector<Integer> square_primes(const Integer& disc)
{
    std::vector<Integer> out;
    for (const auto& [p, e] : factor_integer(abs(disc)))
        if (e >= 2)
            out.push_back(p);
    return out;
}

} // namespace

PrueferCertificate decide_pruefer(const ZOrder& a)
{
    PrueferCertificate c;
    try {
        CommutativityResult comm = is_commutative(a);
        if (!comm.commutative) {
            set_no(c, Reason::Noncommutative);
            c.pair = std::make_pair(comm.i, comm.j);
            return c;
        }
        ReducedResult red = is_reduced(a);
        if (red.status == Reducedness::NotReduced) {
            set_no(c, Reason::NotReduced);
            c.element = red.witness;
            c.nilpotency_index = red.nilpotency_index;
            c.minpoly = minimal_polynomial(a, *red.witness);
            return c;
        }
        Decomposition dec = decompose(a);
        IdempotentCheck idc = idempotents_in_A(a, dec);
        if (!idc.all_in_A) {
            set_no(c, Reason::IdempotentEscapes);
            c.component = *idc.escaping;
            c.element = dec.idempotents[*idc.escaping];
            c.minpoly = minimal_polynomial(a, *c.element);
            return c;
        }
        std::vector<ComponentProof> proofs;
        for (std::size_t i = 0; i < dec.size(); ++i) {
            EmbeddedOrder comp = component_order(a, dec, i);
            ClosednessResult cl = is_integrally_closed_order(comp.order);
            if (!cl.closed) {
                set_no(c, Reason::ComponentNotMaximal);
                c.component = i;
                c.element = comp.to_ambient(*cl.witness);
                c.minpoly = minimal_polynomial(a, *c.element);
                return c;
            }
            ComponentProof pr;
            pr.idempotent = dec.idempotents[i];
            pr.minpoly = dec.component_minpolys[i];
            for (const auto& row : comp.basis)
                pr.basis.push_back(to_integer(row));
            pr.discriminant = cl.maximal.disc_input;
            pr.primes = cl.maximal.primes;
            proofs.push_back(std::move(pr));
        }
        c.verdict = Verdict::Yes;
        c.reason = Reason::AllComponentsMaximal;
        c.citation = citation_for(c.reason);
        c.primitive = dec.primitive;
        c.primitive_minpoly = dec.primitive_minpoly;
        c.components = std::move(proofs);
        return c;
    } catch (const Error& e) {
        if (!is_resource_error(e.code()))
            throw;
        PrueferCertificate ind;
        ind.verdict = Verdict::Indeterminate;
        ind.reason = Reason::ResourceExhausted;
        ind.citation = citation_for(ind.reason);
        ind.detail = e.what();
        return ind;
    }
}

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedCertificate, what); }

const AlgebraElement& need_element(const ZOrder& a, const PrueferCertificate& c)
{
    if (!c.element)
        malformed("witness element missing");
    if (c.element->dim() != a.dim())
        malformed("witness element has the wrong dimension");
    return *c.element;
}

bool verify_integral_outside(const ZOrder& a, const PrueferCertificate& c)
{
    const AlgebraElement& b = need_element(a, c);
    RationalPolynomial mu = minimal_polynomial(a, b);
    if (c.minpoly && !(*c.minpoly == mu))
        return false;
    return mu.is_monic() && mu.has_integer_coefficients() && !lattice_member(IntegerLattice::standard(a.dim()), b.coords);
}

bool verify_yes(const ZOrder& a, const PrueferCertificate& c)
{
    std::size_t n = a.dim();
    if (c.components.empty())
        malformed("YES certificate without components");
    for (const auto& pr : c.components) {
        if (pr.idempotent.dim() != n)
            malformed("idempotent has the wrong dimension");
        for (const auto& row : pr.basis)
            if (row.size() != n)
                malformed("component basis has the wrong dimension");
    }
    if (!is_commutative(a).commutative)
        return false;

    AlgebraElement total = a.zero();
    for (std::size_t i = 0; i < c.components.size(); ++i) {
        const AlgebraElement& ei = c.components[i].idempotent;
        if (!a.contains(ei))
            return false;
        total = total + ei;
        for (std::size_t j = 0; j < c.components.size(); ++j) {
            AlgebraElement prod = a.mul(ei, c.components[j].idempotent);
            if (!(prod == (i == j ? ei : a.zero())))
                return false;
        }
    }
    if (!(total == a.one()))
        return false;

    for (const auto& pr : c.components) {
        if (pr.idempotent.is_zero())
            return false;
        linalg::IntMatrix rows;
        for (std::size_t j = 0; j < n; ++j)
            rows.push_back(to_integer(a.mul(a.basis_element(j), pr.idempotent).coords));
        IntegerLattice lat = hnf_reduce(rows, n);
        if (lat.basis() != pr.basis)
            return false;
        EmbeddedOrder comp = order_from_lattice(a, linalg::to_rational(lat.basis()), pr.idempotent);
        Integer disc = discriminant(comp.order);
        if (disc == 0 || disc != pr.discriminant)
            return false;
        std::vector<Integer> primes = square_primes(disc);
        if (primes != pr.primes)
            return false;
        for (const auto& p : primes)
            if (!is_p_maximal(comp.order, p))
                return false;
    }
    return true;
}

} // namespace

bool verify_certificate(const ZOrder& a, const PrueferCertificate& c)
{
    switch (c.verdict) {
    case Verdict::Indeterminate:
        return false;
    case Verdict::Yes:
        if (c.reason != Reason::AllComponentsMaximal)
            malformed("YES certificate with reason " + reason_name(c.reason));
        return verify_yes(a, c);
    case Verdict::No:
        break;
    }
    switch (c.reason) {
    case Reason::Noncommutative: {
        if (!c.pair)
            malformed("basis pair missing");
        auto [i, j] = *c.pair;
        if (i >= a.dim() || j >= a.dim())
            malformed("basis pair out of range");
        AlgebraElement bi = a.basis_element(i), bj = a.basis_element(j);
        return !(a.mul(bi, bj) == a.mul(bj, bi));
    }
    case Reason::NotReduced: {
        const AlgebraElement& x = need_element(a, c);
        if (c.nilpotency_index == 0)
            malformed("nilpotency index missing");
        return !x.is_zero() && a.pow(x, c.nilpotency_index).is_zero();
    }
    case Reason::IdempotentEscapes:
    case Reason::ComponentNotMaximal:
        return verify_integral_outside(a, c);
    default:
        malformed("NO certificate with reason " + reason_name(c.reason));
    }
}

namespace {

nlohmann::ordered_json coords_json(const RatVector& v)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& x : v)
        arr.push_back(to_string(x));
    return arr;
}

nlohmann::ordered_json ints_json(const IntVector& v)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& x : v)
        arr.push_back(x.get_str());
    return arr;
}

RatVector coords_from(const nlohmann::json& j)
{
    if (!j.is_array())
        malformed("expected a coordinate array");
    RatVector v;
    for (const auto& x : j) {
        if (x.is_string())
            v.push_back(parse_rational(x.get<std::string>()));
        else if (x.is_number_integer())
            v.push_back(Rational(std::to_string(x.get<long long>())));
        else
            malformed("bad coordinate " + x.dump());
    }
    return v;
}

Integer integer_from(const nlohmann::json& j)
{
    Rational q = coords_from(nlohmann::json::array({j})).front();
    if (!is_integral(q))
        malformed("expected an integer, got " + j.dump());
    return q.get_num();
}

const nlohmann::json& field(const nlohmann::json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        malformed(std::string("missing field '") + key + "'");
    return j.at(key);
}

} // namespace

nlohmann::ordered_json certificate_to_json(const PrueferCertificate& c)
{
    nlohmann::ordered_json out;
    out["verdict"] = verdict_name(c.verdict);
    out["reason"] = reason_name(c.reason);
    nlohmann::ordered_json w = nlohmann::ordered_json::object();
    if (c.verdict == Verdict::Indeterminate) {
        w["detail"] = c.detail;
    } else if (c.verdict == Verdict::Yes) {
        w["primitive"] = coords_json(c.primitive->coords);
        w["primitive_minpoly"] = c.primitive_minpoly.to_string();
        nlohmann::ordered_json comps = nlohmann::ordered_json::array();
        for (const auto& pr : c.components) {
            nlohmann::ordered_json cj;
            cj["idempotent"] = coords_json(pr.idempotent.coords);
            cj["minpoly"] = pr.minpoly.to_string();
            nlohmann::ordered_json basis = nlohmann::ordered_json::array();
            for (const auto& row : pr.basis)
                basis.push_back(ints_json(row));
            cj["basis"] = basis;
            cj["discriminant"] = pr.discriminant.get_str();
            cj["primes"] = ints_json(pr.primes);
            comps.push_back(cj);
        }
        w["components"] = comps;
    } else if (c.reason == Reason::Noncommutative) {
        w["pair"] = {c.pair->first, c.pair->second};
    } else {
        w["element"] = coords_json(c.element->coords);
        if (c.minpoly)
            w["minpoly"] = c.minpoly->to_string();
        if (c.reason == Reason::NotReduced)
            w["nilpotency_index"] = c.nilpotency_index;
        if (c.component)
            w["component"] = *c.component;
    }
    out["witness"] = w;
    out["citation"] = c.citation;
    return out;
}

PrueferCertificate certificate_from_json(const nlohmann::json& doc)
{
    PrueferCertificate c;
    try {
        std::string v = field(doc, "verdict").get<std::string>();
        std::string r = field(doc, "reason").get<std::string>();
        if (v == "YES")
            c.verdict = Verdict::Yes;
        else if (v == "NO")
            c.verdict = Verdict::No;
        else if (v == "INDETERMINATE")
            c.verdict = Verdict::Indeterminate;
        else
            malformed("unknown verdict '" + v + "'");
        bool found = false;
        for (Reason cand : {Reason::Noncommutative, Reason::NotReduced, Reason::IdempotentEscapes,
                            Reason::ComponentNotMaximal, Reason::AllComponentsMaximal, Reason::ResourceExhausted})
            if (reason_name(cand) == r) {
                c.reason = cand;
                found = true;
            }
        if (!found)
            malformed("unknown reason '" + r + "'");
        if (doc.contains("citation"))
            c.citation = doc.at("citation").get<std::string>();
        const nlohmann::json& w = field(doc, "witness");
        if (c.verdict == Verdict::Indeterminate) {
            if (w.contains("detail"))
                c.detail = w.at("detail").get<std::string>();
        } else if (c.verdict == Verdict::Yes) {
            c.primitive = AlgebraElement(coords_from(field(w, "primitive")));
            c.primitive_minpoly = parse_polynomial(field(w, "primitive_minpoly").get<std::string>());
            for (const auto& cj : field(w, "components")) {
                ComponentProof pr;
                pr.idempotent = AlgebraElement(coords_from(field(cj, "idempotent")));
                pr.minpoly = parse_polynomial(field(cj, "minpoly").get<std::string>());
                for (const auto& row : field(cj, "basis")) {
                    IntVector irow;
                    for (const auto& x : row)
                        irow.push_back(integer_from(x));
                    pr.basis.push_back(irow);
                }
                pr.discriminant = integer_from(field(cj, "discriminant"));
                for (const auto& p : field(cj, "primes"))
                    pr.primes.push_back(integer_from(p));
                c.components.push_back(std::move(pr));
            }
        } else if (c.reason == Reason::Noncommutative) {
            const auto& p = field(w, "pair");
            if (!p.is_array() || p.size() != 2)
                malformed("pair must have two entries");
            c.pair = std::make_pair(p[0].get<std::size_t>(), p[1].get<std::size_t>());
        } else {
            c.element = AlgebraElement(coords_from(field(w, "element")));
            if (w.contains("minpoly"))
                c.minpoly = parse_polynomial(w.at("minpoly").get<std::string>());
            if (w.contains("nilpotency_index"))
                c.nilpotency_index = w.at("nilpotency_index").get<unsigned>();
            if (w.contains("component"))
                c.component = w.at("component").get<std::size_t>();
        }
    } catch (const nlohmann::json::exception& e) {
        malformed(std::string("certificate JSON: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MalformedCertificate)
            throw;
        malformed(e.what());
    }
    return c;
}

} // namespace ivp
