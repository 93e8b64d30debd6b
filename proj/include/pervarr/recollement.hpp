#pragma once
#include <vector>

#include "pervarr/module_core.hpp"
#include "pervarr/salvetti.hpp"

namespace pervarr {

/// Restriction of a module to the open stratum: the space e_A M with one
/// invertible monodromy matrix per fundamental-group loop generator.
struct LocalSystemRep {
  std::size_t base;
  Matrix space_basis;  // module_dim x k
  std::vector<Word> loops;
  std::vector<Matrix> monodromy;  // k x k each
  std::size_t dim() const { return space_basis.cols(); }
};

LocalSystemRep j_restrict(const RModule& m, std::size_t chamber);
LocalSystemRep j_restrict(const RModule& m, const Presentation& pres);

/// True when there is an invertible intertwiner between two local systems
/// presented on the same loop words.
bool local_systems_isomorphic(const LocalSystemRep& a, const LocalSystemRep& b);

/// Generators of the module as operators: every face action plus every
/// cached localization inverse.
std::vector<Matrix> module_operator_set(const RModule& m);

/// T_e(M): smallest submodule containing e M, for e the idempotent of the
/// given face.
Subspace t_submodule(const RModule& m, std::size_t face);

/// N_e(M): largest submodule killed by e.
Subspace n_submodule(const RModule& m, std::size_t face);

/// Quotient by T_e with induced actions.
RModule i_upper_star(const RModule& m, std::size_t face);

/// Submodule structure on N_e.
RModule i_upper_shriek(const RModule& m, std::size_t face);

/// Inclusion of modules supported on the closed complement: requires every
/// chamber idempotent to act by zero. Throws NotSupportedOnClosedError.
RModule i_star(const RModule& m);

/// T_e(M) / N_e(T_e(M)) with induced actions; no local-system contract
/// checks (used relative to a stratum, where e need not be a chamber).
RModule purify(const RModule& m, std::size_t face);

/// Intermediate extension of the open restriction of a seed module:
/// purification plus the full contract (i* and i^! vanish; the open
/// restriction is preserved through the canonical map).
RModule intermediate_extension_from(const RModule& seed, std::size_t chamber);

struct SupportReport {
  std::vector<std::size_t> support_faces;  // faces with nonzero idempotent
  std::vector<Flat> maximal_flats;
  bool closed = false;  // support is a union of C_Z's
};

SupportReport support(const RModule& m);

/// True iff act(C) = 0 for every face outside the union of the flats.
bool annihilated_by_iz(const RModule& m, const std::vector<Flat>& flats);

/// Pull an R_Z-module back along the quotient onto the flat: embedded faces
/// keep their matrices, everything else acts by zero. Output is validated
/// and its chamber restriction over the flat matches the input's.
RModule rho_pullback(const Workbench& ambient, const Restriction& restr,
                     const RModule& m_z);

/// IC pipeline on the closure of a stratum: transport the seed along
/// rho_pullback, then purify at a maximal face of C_Z. Checks the relative
/// recollement contracts (i* and i^! vanish relative to the open stratum of
/// the flat).
RModule ic_on_stratum(const Workbench& ambient, const Restriction& restr,
                      const RModule& seed_z, std::size_t chamber_b);

/// Transport a word of the restricted arrangement to the ambient poset.
Word map_word(const Restriction& restr, const Word& w);

}  // namespace pervarr
