#ifndef IVP_ERROR_HPP_
#define IVP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ivp {

enum class ErrorCode {
    DimensionMismatch,
    ZeroPolynomial,
    DegreeTooLarge,
    MalformedInput,
    NonAssociative,
    NoIdentity,
    UnitLineNotSaturated,
    NotReduced,
    NotCommutative,
    SearchExhausted,
    PreconditionFailed,
    DiscFactorizationFailed,
    BudgetExceeded,
    IndexDivisible,
    MalformedCertificate,
    InternalError,
};

const char* error_code_name(ErrorCode c);

/* Budget, search and size limits: the question was not answered, rather
 * than answered badly. */
bool is_resource_error(ErrorCode c);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code)
    {
    }
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace ivp

#endif
