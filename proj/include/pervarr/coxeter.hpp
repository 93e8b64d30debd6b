#pragma once
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "pervarr/module_core.hpp"
#include "pervarr/recollement.hpp"

namespace pervarr {

/// Finite crystallographic Coxeter system realized by integer Cartan
/// matrices, with its reflection arrangement and the bijection between
/// subsets of S and the faces of the closed fundamental chamber.
/// Subsets of S are passed around as bitmasks over generator indices.
class CoxeterSystem {
 public:
  static std::shared_ptr<const CoxeterSystem> build(
      const std::vector<std::vector<unsigned>>& coxeter_matrix);
  /// Types "A", "B", "G" (G needs rank 2), products via explicit matrices.
  static std::shared_ptr<const CoxeterSystem> build_type(const std::string& type,
                                                         unsigned rank);

  std::size_t rank() const { return rank_; }
  unsigned coxeter_entry(std::size_t s, std::size_t t) const { return cox_[s][t]; }
  std::size_t order() const { return elem_.size(); }
  std::size_t identity() const { return identity_; }
  const Matrix& generator(std::size_t s) const { return gen_[s]; }
  const Matrix& element(std::size_t w) const { return elem_[w]; }
  unsigned length(std::size_t w) const { return length_[w]; }
  const std::vector<unsigned>& word(std::size_t w) const { return word_[w]; }

  std::size_t index_of(const Matrix& m) const;
  std::size_t mult(std::size_t a, std::size_t b) const;
  std::size_t inv(std::size_t a) const;

  /// Elements of the standard parabolic generated by the masked generators.
  const std::vector<std::size_t>& parabolic(unsigned mask) const;
  std::size_t longest_element(unsigned mask) const;

  // Reflection arrangement data.
  const FacePoset& poset() const { return *poset_; }
  std::shared_ptr<const FacePoset> poset_ptr() const { return poset_; }
  std::size_t fundamental_chamber() const { return fundamental_chamber_; }
  /// Face C_I of the closed fundamental chamber fixed exactly by I.
  std::size_t lambda_face(unsigned mask) const { return lambda_face_[mask]; }
  std::size_t n_subsets() const { return lambda_face_.size(); }
  /// Action of a group element on faces (through witnesses).
  std::size_t face_action(std::size_t w, std::size_t face) const;

  /// Poset + collinearity table for the reflection arrangement; built on
  /// first use (the table is only needed by the plain-module bridge).
  const Workbench& plain_workbench() const;

 private:
  CoxeterSystem() = default;
  std::size_t rank_ = 0;
  std::vector<std::vector<unsigned>> cox_;
  Matrix cartan_;
  std::vector<Matrix> gen_;
  std::vector<Matrix> elem_;
  std::vector<unsigned> length_;
  std::vector<std::vector<unsigned>> word_;
  std::size_t identity_ = 0;
  std::map<std::string, std::size_t> index_;
  mutable std::map<unsigned, std::vector<std::size_t>> parabolic_;
  std::shared_ptr<const FacePoset> poset_;
  Vec fundamental_point_;
  std::size_t fundamental_chamber_ = 0;
  std::vector<std::size_t> lambda_face_;
  mutable std::shared_ptr<const Workbench> workbench_;
};

/// The subsets-of-S poset (reverse inclusion) against the faces of the
/// closed fundamental chamber: I >= J iff C_I <= C_J.
bool lambda_leq(const CoxeterSystem& sys, unsigned mask_i, unsigned mask_j);

/// I opposes J through w: some K with #I = #J = #K - 1 contains both, w lies
/// in W_K with wJw^{-1} = I, and the faces C_I and w(C_J) oppose through C_K.
bool opposes_lambda(const CoxeterSystem& sys, unsigned mask_i, unsigned mask_j,
                    std::size_t w);

/// All localization instances (I, J, w) with I |_w J.
std::vector<std::tuple<unsigned, unsigned, std::size_t>> opposing_lambda_instances(
    const CoxeterSystem& sys);

/// Module over the equivariant algebra: matrices for every e_I and every
/// simple generator, with cached inverses of the localization elements
/// e_I w^{-1} e_J w e_I + (1 - e_I).
struct RWModule {
  std::shared_ptr<const CoxeterSystem> sys;
  std::size_t dim = 0;
  std::vector<Matrix> e;  // by subset mask
  std::vector<Matrix> s;  // by generator index
  std::map<std::tuple<unsigned, unsigned, std::size_t>, Matrix> loc_inv;
  std::vector<Matrix> elem_act;  // group action, filled by validation
  bool validated = false;

  const Matrix& rho(std::size_t w) const;
  void require_validated(const char* who) const;
};

/// Checks relations (1)-(4) on all pairs, enumerates every relation-(5)
/// instance (splittings S = I + J, A in I, B in J, length-additive
/// factorizations w = w2 w1) and the invertibility of all localization
/// elements. The relation-(5) sweep runs serial or OpenMP with identical
/// reports.
ValidationReport validate_rw_module(RWModule& m, Exec exec = default_exec);

RWModule rw_trivial_module(std::shared_ptr<const CoxeterSystem> sys,
                           std::size_t d);
RWModule rw_sign_module(std::shared_ptr<const CoxeterSystem> sys);
RWModule rw_direct_sum(const RWModule& a, const RWModule& b);

/// Braid-group restriction: the space e_0 M with one matrix per simple
/// generator, sending s to e_0 s e_0. Asserts the braid relations.
struct BraidRep {
  Matrix space_basis;
  std::vector<Matrix> sigma;
  std::size_t dim() const { return space_basis.cols(); }
};
BraidRep braid_restrict(const RWModule& m);
bool braid_reps_isomorphic(const BraidRep& a, const BraidRep& b);

// Equivariant recollement with e = e_I for a subset mask (default: the
// empty set, the chamber idempotent).
std::vector<Matrix> rw_operator_set(const RWModule& m);
Subspace rw_t_submodule(const RWModule& m, unsigned mask = 0);
Subspace rw_n_submodule(const RWModule& m, unsigned mask = 0);
RWModule rw_submodule(const RWModule& m, const Subspace& sub);
RWModule rw_quotient(const RWModule& m, const Subspace& sub);
RWModule rw_i_upper_star(const RWModule& m, unsigned mask = 0);
RWModule rw_i_upper_shriek(const RWModule& m, unsigned mask = 0);

/// Purification T_e(M)/N_e(T_e(M)) at e = e_0 with the contracts checked:
/// i* and i^! of the result vanish and the braid restriction is preserved.
RWModule rw_intermediate_extension(const RWModule& seed);

/// Subset masks whose idempotent acts nonzero.
std::vector<unsigned> rw_support(const RWModule& m);
/// Masks I with C_I inside the flat.
std::vector<unsigned> lambda_of_flat(const CoxeterSystem& sys, const Flat& flat);
bool rw_annihilated_outside(const RWModule& m,
                            const std::vector<unsigned>& lambda_z);

/// Plain module on the reflection arrangement: act(w . C_I) is rho(w) e_I
/// rho(w)^{-1}. Stabilizer independence is checked and the output is
/// validated.
RModule to_plain_module(const RWModule& m);

}  // namespace pervarr
