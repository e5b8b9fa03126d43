#include "ivp/error.hpp"

namespace ivp {

const char* error_code_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::ZeroPolynomial: return "ZERO_POLYNOMIAL";
    case ErrorCode::DegreeTooLarge: return "DEGREE_TOO_LARGE";
    case ErrorCode::MalformedInput: return "MALFORMED_INPUT";
    case ErrorCode::NonAssociative: return "NON_ASSOCIATIVE";
    case ErrorCode::NoIdentity: return "NO_IDENTITY";
    case ErrorCode::UnitLineNotSaturated: return "UNIT_LINE_NOT_SATURATED";
    case ErrorCode::NotReduced: return "NOT_REDUCED";
    case ErrorCode::NotCommutative: return "NOT_COMMUTATIVE";
    case ErrorCode::SearchExhausted: return "SEARCH_EXHAUSTED";
    case ErrorCode::PreconditionFailed: return "PRECONDITION_FAILED";
    case ErrorCode::DiscFactorizationFailed: return "DISC_FACTORIZATION_FAILED";
    case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::IndexDivisible: return "INDEX_DIVISIBLE";
    case ErrorCode::MalformedCertificate: return "MALFORMED_CERTIFICATE";
    case ErrorCode::InternalError: return "INTERNAL_ERROR";
    }
    return "UNKNOWN";
}

bool is_resource_error(ErrorCode c)
{
    return c == ErrorCode::BudgetExceeded || c == ErrorCode::DiscFactorizationFailed ||
           c == ErrorCode::SearchExhausted || c == ErrorCode::DegreeTooLarge;
}

} // namespace ivp
