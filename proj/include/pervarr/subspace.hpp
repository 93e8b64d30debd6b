#pragma once
#include <vector>

#include "pervarr/matrix.hpp"

namespace pervarr {

/// Linear subspace of Q^n, held in a canonical reduced basis so that equal
/// subspaces compare equal.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}
  static Subspace span_of(std::size_t ambient_dim, const std::vector<Vec>& gens);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  Matrix basis_matrix() const;  // ambient x dim, columns = basis vectors

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const = default;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// {x : op*x in *this}
  Subspace preimage_under(const Matrix& op) const;
  /// A matrix whose rows annihilate exactly this subspace.
  Matrix annihilator_rows() const;

 private:
  std::size_t ambient_;
  std::vector<Vec> basis_;  // rows of a reduced row echelon matrix
};

Subspace kernel_basis(const Matrix& m);
Subspace image_basis(const Matrix& m);

/// Smallest subspace containing seed and stable under every operator.
/// Stabilizes in at most ambient_dim rounds.
Subspace closure_under(const std::vector<Matrix>& ops, const Subspace& seed);

/// Largest subspace S with constraint*S = 0 and op*S <= S for every op;
/// computed as the decreasing fixed point starting from ker(constraint).
Subspace largest_invariant_in(const std::vector<Matrix>& ops,
                              const Matrix& constraint);

/// Whether a subspace of d*d-vectors (reshaped row-major into d x d
/// matrices) contains an invertible element: tries each basis vector, then
/// deterministic random small-integer combinations. Non-invertible elements
/// form a proper closed subvariety, so random combinations find a witness
/// with overwhelming probability when one exists.
bool invertible_in_span(const Subspace& mats, std::size_t d);

}  // namespace pervarr
