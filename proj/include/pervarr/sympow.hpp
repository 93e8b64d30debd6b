#pragma once
#include <optional>
#include <vector>

#include "pervarr/matrix.hpp"

namespace pervarr {

/// Degree-k monomial exponent vectors in n variables, lexicographically
/// descending (x^k first, then x^{k-1}y, ...). This order is fixed; the
/// matrices below are expressed in it.
std::vector<std::vector<unsigned>> monomial_basis(std::size_t n_vars, unsigned k);

/// Action of m on the degree-k symmetric power: variables substitute as
/// x_i -> sum_j m(i,j) x_j, and entry (i,j) is the coefficient of monomial j
/// in the image of monomial i. Multiplicative: sym_power(A*B) =
/// sym_power(A)*sym_power(B).
Matrix sym_power(const Matrix& m, unsigned k);

/// Least k <= k_max with sum_i coeffs[i]*sym_power(elems[i],k) nonzero, or
/// nullopt if every such sum vanishes. All elems must be invertible.
std::optional<unsigned> sym_separation(const std::vector<Matrix>& elems,
                                       const std::vector<Rat>& coeffs,
                                       unsigned k_max);

}  // namespace pervarr
