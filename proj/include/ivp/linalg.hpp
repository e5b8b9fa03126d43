#ifndef IVP_LINALG_HPP_
#define IVP_LINALG_HPP_

#include "ivp/rational.hpp"

#include <optional>
#include <vector>

/* Dense exact linear algebra over Q. Matrices are stored as lists of rows;
 * vectors are row vectors unless a function says otherwise.
 */
namespace ivp::linalg {

using RatMatrix = std::vector<RatVector>;
using IntMatrix = std::vector<IntVector>;

RatMatrix identity(std::size_t n);
RatMatrix to_rational(const IntMatrix& m);

std::size_t columns(const RatMatrix& m);

RatMatrix transpose(const RatMatrix& m);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
/* Row vector times matrix. */
RatVector apply(const RatVector& v, const RatMatrix& m);
/* Matrix times column vector. */
RatVector apply(const RatMatrix& m, const RatVector& v);

/* Reduced row echelon form in place; returns pivot columns. */
std::vector<std::size_t> rref(RatMatrix& m);

std::size_t rank(RatMatrix m);

/* Basis of the row space (the nonzero rows of the rref). */
RatMatrix row_space(RatMatrix m);

/* Basis of {x : m x = 0}, as row vectors. `cols` is needed when m has no rows. */
RatMatrix right_kernel(const RatMatrix& m, std::size_t cols);

/* Basis of {y : y m = 0}. */
RatMatrix left_kernel(const RatMatrix& m);

/* Some x with x * rows = v (x expresses v in terms of the rows), or nullopt
 * when v is outside the row space. The rows need not be independent. */
std::optional<RatVector> solve_left(const RatMatrix& rows, const RatVector& v);

Rational determinant(RatMatrix m);
/* Fraction-free determinant of an integer matrix (Bareiss). */
Integer determinant(const IntMatrix& m);

/* Throws Error(PreconditionFailed) when singular. */
RatMatrix inverse(const RatMatrix& m);

} // namespace ivp::linalg

#endif
