#ifndef IVP_LATTICE_HPP_
#define IVP_LATTICE_HPP_

#include "ivp/linalg.hpp"
#include "ivp/rational.hpp"

#include <cstddef>
#include <vector>

namespace ivp {

/* A subgroup of Z^n, stored by its row Hermite normal form: rows are
 * linearly independent, pivot columns strictly increase from row to row,
 * pivots are positive and the entries above each pivot lie in [0, pivot).
 * That form is unique, so two lattices are equal iff their bases are.
 */
class IntegerLattice {
  public:
    explicit IntegerLattice(std::size_t ambient_dim = 0);

    static IntegerLattice standard(std::size_t n);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t rank() const { return basis_.size(); }
    const linalg::IntMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool full_rank() const { return rank() == ambient_dim_; }

    /* |Z^n : L| for full-rank lattices. */
    Integer index() const;

    bool contains(const RatVector& v) const;
    bool contains(const IntVector& v) const;
    bool contains(const IntegerLattice& other) const;

    /* Coordinates of v in the basis, or empty when v is not a member. */
    std::optional<IntVector> coordinates(const RatVector& v) const;

    IntegerLattice scaled(const Integer& m) const;
    IntegerLattice operator+(const IntegerLattice& other) const;

    bool operator==(const IntegerLattice& other) const
    {
        return ambient_dim_ == other.ambient_dim_ && basis_ == other.basis_;
    }

  private:
    friend IntegerLattice hnf_reduce(const linalg::IntMatrix& rows, std::size_t ambient_dim);
    std::size_t ambient_dim_;
    linalg::IntMatrix basis_;
    std::vector<std::size_t> pivots_;
};

/* Row HNF of the Z-span of `rows`, by integer Gaussian elimination with
 * Euclidean pivoting. Throws DimensionMismatch on ragged input. */
IntegerLattice hnf_reduce(const linalg::IntMatrix& rows);
IntegerLattice hnf_reduce(const linalg::IntMatrix& rows, std::size_t ambient_dim);

/* Same, with rational rows; the result is returned as (lattice, d) meaning
 * the rational lattice (1/d) * lattice. */
struct RationalLattice {
    IntegerLattice numerator;
    Integer denominator{1};

    linalg::RatMatrix basis() const;
    bool contains(const RatVector& v) const;
    bool operator==(const RationalLattice& o) const;
};
RationalLattice hnf_reduce_rational(const linalg::RatMatrix& rows, std::size_t ambient_dim);

bool lattice_member(const IntegerLattice& lattice, const RatVector& v);

/* Points of `lattice` lying in the Q-span of `subspace`. */
IntegerLattice lattice_intersect(const IntegerLattice& lattice, const linalg::RatMatrix& subspace);

/* Basis of the saturated integer left kernel {z in Z^r : z m = 0}. */
linalg::IntMatrix integer_left_kernel(const linalg::IntMatrix& m);

} // namespace ivp

#endif
