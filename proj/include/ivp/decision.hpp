#ifndef IVP_DECISION_HPP_
#define IVP_DECISION_HPP_

#include "ivp/order.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ivp {

enum class Verdict { Yes, No, Indeterminate };

enum class Reason {
    Noncommutative,
    NotReduced,
    IdempotentEscapes,
    ComponentNotMaximal,
    AllComponentsMaximal,
    ResourceExhausted,
};

std::string verdict_name(Verdict v);
std::string reason_name(Reason r);

struct ComponentProof {
    AlgebraElement idempotent;
    RationalPolynomial minpoly;   // irreducible factor of the primitive minpoly
    linalg::IntMatrix basis;      // HNF of A e_i, ambient coordinates
    Integer discriminant;         // of A e_i as an order
    std::vector<Integer> primes;  // p with p^2 | discriminant
};

struct PrueferCertificate {
    Verdict verdict = Verdict::Indeterminate;
    Reason reason = Reason::ResourceExhausted;

    std::optional<std::pair<std::size_t, std::size_t>> pair; // noncommuting basis pair
    std::optional<AlgebraElement> element;                  // nilpotent, or integral element outside A
    std::optional<RationalPolynomial> minpoly;              // of element
    unsigned nilpotency_index = 0;
    std::optional<std::size_t> component;

    std::optional<AlgebraElement> primitive;
    RationalPolynomial primitive_minpoly;
    std::vector<ComponentProof> components;

    std::string detail; // error text for INDETERMINATE
    std::string citation;
};

/* Decides whether Int_Q(A) is Pruefer. Budget and factorization failures
 * give INDETERMINATE rather than a verdict. */
PrueferCertificate decide_pruefer(const ZOrder& a);

/* Re-checks a certificate from scratch. Returns false when the claim does
 * not hold for A; throws MalformedCertificate when it is incomplete or has
 * the wrong shape. INDETERMINATE certificates never verify. */
bool verify_certificate(const ZOrder& a, const PrueferCertificate& cert);

nlohmann::ordered_json certificate_to_json(const PrueferCertificate& cert);
PrueferCertificate certificate_from_json(const nlohmann::json& doc);

} // namespace ivp

#endif
