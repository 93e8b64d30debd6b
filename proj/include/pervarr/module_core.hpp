#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pervarr/arrangement.hpp"
#include "pervarr/matrix.hpp"
#include "pervarr/subspace.hpp"

namespace pervarr {

/// Shared immutable context: the face poset plus its collinearity table
/// (the table is the expensive part, so it is computed once per arrangement
/// and shared by every module living on it).
struct Workbench {
  std::shared_ptr<const FacePoset> poset;
  std::shared_ptr<const CollinearTable> collinear;

  static Workbench make(Arrangement arr, Exec exec = default_exec);
  static Workbench make(FacePoset poset, Exec exec = default_exec);
  bool same_arrangement(const Workbench& o) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Finite-dimensional module over the localized face algebra: one idempotent
/// matrix per face, plus the cached localization inverses s_{AB} for every
/// ordered opposing pair (filled in by validate_module).
struct RModule {
  Workbench ctx;
  std::size_t dim = 0;
  std::vector<Matrix> act;  // by face index
  std::map<std::pair<std::size_t, std::size_t>, Matrix> loc_inv;
  bool validated = false;

  const FacePoset& poset() const { return *ctx.poset; }
  const Matrix& action(std::size_t face) const { return act[face]; }
  /// s_{AB} for an opposing pair; throws InvalidModuleError when absent.
  const Matrix& s(std::size_t a, std::size_t b) const;
  void require_validated(const char* who) const;
};

/// Checks R1 on every face, R2 on every collinear triple, R3 on every
/// comparable pair, and invertibility of every localization element
/// (caching the inverses). The per-instance sweep runs serial or OpenMP;
/// both produce identical reports.
ValidationReport validate_module(RModule& m, Exec exec = default_exec);

/// Per-face spaces with upward (gamma) and downward (delta) maps for every
/// comparable pair; gamma[(c1,c2)] : E_{c1} -> E_{c2} needs c1 <= c2, and
/// delta[(c2,c1)] : E_{c2} -> E_{c1}.
struct DoubleRep {
  Workbench ctx;
  std::vector<std::size_t> dims;
  std::map<std::pair<std::size_t, std::size_t>, Matrix> gamma;
  std::map<std::pair<std::size_t, std::size_t>, Matrix> delta;

  const FacePoset& poset() const { return *ctx.poset; }
};

/// Double-representation axioms plus monotonicity, transitivity and
/// invertibility.
ValidationReport validate_double_rep(const DoubleRep& e);

/// phi_{AB} = gamma_{CB} . delta_{AC} through a common lower bound C;
/// asserts independence of the choice over all common lower bounds.
Matrix phi(const DoubleRep& e, std::size_t a, std::size_t b);

/// Collapse to the module on E_Z with e_C acting by delta_{CZ} gamma_{ZC}.
/// Throws if the input fails the category axioms.
RModule collapse(const DoubleRep& e);

/// Expand a validated module: E_C = image of act(C), gamma = multiplication
/// by e_C, delta = inclusion.
DoubleRep expand(const RModule& m);

/// Verifies that delta_{CZ} gives componentwise isomorphisms E_C -> e_C E_Z
/// commuting with gamma and delta (the unit of the equivalence).
ValidationReport nat_iso_check(const DoubleRep& e);

struct ModuleMorphism {
  Matrix matrix;  // target_dim x source_dim
};

/// Basis of all matrices commuting with every face action.
std::vector<ModuleMorphism> hom_space(const RModule& m1, const RModule& m2);

/// True when some invertible element exists in hom(m1, m2).
bool modules_isomorphic(const RModule& m1, const RModule& m2);

// Constructors. Every constructor validates its output and throws
// ValidationFailedError (with the report) on failure.
RModule constant_module(const Workbench& ctx, std::size_t d);

/// Seed extension of a local system with monodromy T on a one-hyperplane
/// arrangement: dim 2k, act(+) = [[I,T],[0,0]], act(-) = [[0,0],[I,I]].
RModule one_hyperplane_extension(const Workbench& ctx, const Matrix& t);

/// The two-parameter family act(+) = [[1,a],[0,0]], act(-) = [[0,0],[b,1]]
/// (valid iff a*b != 0).
RModule one_hyperplane_ab(const Workbench& ctx, const Rat& a, const Rat& b);

RModule direct_sum(const RModule& m1, const RModule& m2);

/// Module on the product arrangement (faces = sign-vector pairs) acting by
/// Kronecker products.
RModule external_tensor(const RModule& m1, const RModule& m2);

/// Combinatorial stalk at the cell iP + Q of the complex attached to C:
/// image of act(compose(C,Q)) when P <= C, zero otherwise.
Subspace stalk(const RModule& m, std::size_t p, std::size_t q, std::size_t c);

/// Module structure on an invariant subspace, in its canonical basis.
/// Validates the result.
RModule submodule_module(const RModule& m, const Subspace& s);

/// Quotient by an invariant subspace, on a complement basis chosen greedily
/// from the standard basis; recomputed with a second complement choice and
/// checked for consistency. Validates the result.
RModule quotient_module(const RModule& m, const Subspace& s);

}  // namespace pervarr
