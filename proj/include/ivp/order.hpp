#ifndef IVP_ORDER_HPP_
#define IVP_ORDER_HPP_

#include "ivp/lattice.hpp"
#include "ivp/linalg.hpp"
#include "ivp/polynomial.hpp"
#include "ivp/rational.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ivp {

/* An element of B = A (x) Q, by its rational coordinates in the basis of A. */
struct AlgebraElement {
    RatVector coords;

    AlgebraElement() = default;
    explicit AlgebraElement(RatVector c) : coords(std::move(c)) {}
    explicit AlgebraElement(const IntVector& c) : coords(ivp::to_rational(c)) {}

    std::size_t dim() const { return coords.size(); }
    bool is_zero() const { return ivp::is_zero(coords); }

    /* Smallest d >= 1 with d * x integral; x = numerator() / denominator(). */
    Integer denominator() const { return common_denominator(coords); }
    IntVector numerator() const;

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator*(const Rational& c) const;
    bool operator==(const AlgebraElement& o) const { return coords == o.coords; }

    std::string to_string() const { return ivp::to_string(coords); }
};

/* A unital associative ring that is free of rank n over Z, given by the
 * integer structure constants of a Z-basis b_1..b_n: table(i, j) holds the
 * coordinates of b_i * b_j. Instances are validated on construction and
 * immutable afterwards.
 */
class ZOrder {
  public:
    using Table = std::vector<std::vector<IntVector>>;

    /* Validates shape, saturation of the unit line, associativity and the
     * identity law, in that order. */
    ZOrder(std::vector<std::string> names, IntVector one, Table table);

    std::size_t dim() const { return one_.size(); }
    const std::vector<std::string>& basis_names() const { return names_; }
    const IntVector& one_coords() const { return one_; }
    const IntVector& table(std::size_t i, std::size_t j) const { return table_[i][j]; }
    const Table& table() const { return table_; }

    AlgebraElement one() const { return AlgebraElement(one_); }
    AlgebraElement basis_element(std::size_t i) const;
    AlgebraElement zero() const { return AlgebraElement(RatVector(dim(), 0)); }

    AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) const;
    AlgebraElement pow(const AlgebraElement& x, unsigned long e) const;
    /* Product of integer coordinate vectors reduced modulo m (m > 0). */
    IntVector mul_mod(const IntVector& x, const IntVector& y, const Integer& m) const;

    /* x in A, i.e. integral coordinates. */
    bool contains(const AlgebraElement& x) const;

    /* Matrix of y -> x*y in the row convention: row j = coords of x*b_j. */
    linalg::RatMatrix left_regular(const AlgebraElement& x) const;
    /* Matrix of y -> y*x: row j = coords of b_j*x. */
    linalg::RatMatrix right_regular(const AlgebraElement& x) const;
    Rational trace(const AlgebraElement& x) const;

    nlohmann::ordered_json to_json() const;

  private:
    std::vector<std::string> names_;
    IntVector one_;
    Table table_;
};

/* Parses and validates the order document
 * {"dim": n, "basis_names": [...], "one": [...], "table": [[[...]]]}. */
ZOrder load_order(const nlohmann::json& doc);
ZOrder load_order_file(const std::string& path);

/* Direct product A1 x A2 with the concatenated basis. */
ZOrder product_order(const ZOrder& a, const ZOrder& b);

/* Order presented as a lattice inside an ambient B: `basis` rows are the
 * coordinates of the order's basis in the ambient basis. */
struct EmbeddedOrder {
    ZOrder order;
    linalg::RatMatrix basis;

    AlgebraElement to_ambient(const AlgebraElement& x) const;
    /* Coordinates of an ambient element in the order's basis, if it lies in
     * the Q-span of the basis. */
    std::optional<AlgebraElement> from_ambient(const AlgebraElement& x) const;
};

/* Builds the ring structure on the lattice spanned by `basis` (rows in the
 * coordinates of `ambient`), whose identity is `one`. Throws
 * PreconditionFailed when the lattice is not closed under multiplication or
 * does not contain `one`. */
EmbeddedOrder order_from_lattice(const ZOrder& ambient, const linalg::RatMatrix& basis, const AlgebraElement& one);

AlgebraElement mul(const ZOrder& a, const AlgebraElement& x, const AlgebraElement& y);

/* f(x), evaluated by Horner's rule in B. */
AlgebraElement evaluate(const ZOrder& a, const RationalPolynomial& f, const AlgebraElement& x);

/* Least-degree monic polynomial with mu(b) = 0: the first linear relation
 * among 1, b, b^2, ... */
RationalPolynomial minimal_polynomial(const ZOrder& a, const AlgebraElement& b);

/* Characteristic polynomial of the left regular representation of b. */
RationalPolynomial characteristic_polynomial(const ZOrder& a, const AlgebraElement& b);

struct CommutativityResult {
    bool commutative = true;
    std::size_t i = 0, j = 0; // first basis pair with b_i b_j != b_j b_i
};
CommutativityResult is_commutative(const ZOrder& a);

/* Gram matrix of the trace form (x, y) -> Tr(L_{xy}) on the basis. */
linalg::IntMatrix trace_gram(const ZOrder& a);
/* det of the trace Gram matrix. */
Integer discriminant(const ZOrder& a);

/* Jacobson radical of B computed as the radical of the trace form. This is
 * only valid in characteristic 0. */
linalg::RatMatrix jacobson_radical_b(const ZOrder& a);

enum class Reducedness { Reduced, NotReduced, UndecidedSemisimple };

struct ReducedResult {
    Reducedness status = Reducedness::Reduced;
    std::optional<AlgebraElement> witness; // primitive integral nilpotent
    unsigned nilpotency_index = 0;         // least k with witness^k = 0
};
ReducedResult is_reduced(const ZOrder& a);

/* Smallest k >= 1 with x^k = 0, or 0 if x is not nilpotent. */
unsigned nilpotency_index(const ZOrder& a, const AlgebraElement& x);

} // namespace ivp

#endif
