#include "pervarr/recollement.hpp"

#include <algorithm>

#include "pervarr/error.hpp"

namespace pervarr {

LocalSystemRep j_restrict(const RModule& m, std::size_t chamber) {
  return j_restrict(m, salvetti_presentation(m.poset(), chamber));
}

LocalSystemRep j_restrict(const RModule& m, const Presentation& pres) {
  m.require_validated("j_restrict");
  LocalSystemRep ls;
  ls.base = pres.base;
  ls.space_basis = image_basis(m.act[pres.base]).basis_matrix();
  ls.loops = pres.pi1_generators;
  for (const Word& w : ls.loops) {
    Matrix amb = evaluate_word(m, w) * ls.space_basis;
    Matrix restricted = solve(ls.space_basis, amb);
    if (!is_invertible(restricted))
      throw InvalidModuleError("monodromy not invertible on e M");
    ls.monodromy.push_back(std::move(restricted));
  }
  return ls;
}

bool local_systems_isomorphic(const LocalSystemRep& a, const LocalSystemRep& b) {
  if (a.dim() != b.dim() || a.loops.size() != b.loops.size()) return false;
  const std::size_t d = a.dim(), nvars = d * d;
  if (d == 0) return true;
  Matrix sys(a.loops.size() * nvars, nvars);
  std::size_t row = 0;
  for (std::size_t g = 0; g < a.loops.size(); ++g) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
          sys(row, i * d + k) += a.monodromy[g](k, j);
          sys(row, k * d + j) -= b.monodromy[g](i, k);
        }
        ++row;
      }
  }
  return invertible_in_span(kernel_basis(sys), d);
}

std::vector<Matrix> module_operator_set(const RModule& m) {
  m.require_validated("module_operator_set");
  std::vector<Matrix> ops = m.act;
  for (const auto& [key, inv] : m.loc_inv) ops.push_back(inv);
  return ops;
}

Subspace t_submodule(const RModule& m, std::size_t face) {
  return closure_under(module_operator_set(m), image_basis(m.act[face]));
}

Subspace n_submodule(const RModule& m, std::size_t face) {
  return largest_invariant_in(module_operator_set(m), m.act[face]);
}

RModule i_upper_star(const RModule& m, std::size_t face) {
  return quotient_module(m, t_submodule(m, face));
}

RModule i_upper_shriek(const RModule& m, std::size_t face) {
  return submodule_module(m, n_submodule(m, face));
}

RModule i_star(const RModule& m) {
  m.require_validated("i_star");
  for (std::size_t c : m.poset().chambers())
    if (!m.act[c].is_zero())
      throw NotSupportedOnClosedError(
          "i_star input not annihilated by chamber idempotent " +
          m.poset().face_name(c));
  return m;
}

RModule purify(const RModule& m, std::size_t face) {
  m.require_validated("purify");
  Subspace big = t_submodule(m, face);
  RModule on_big = submodule_module(m, big);
  Subspace small = n_submodule(on_big, face);
  return quotient_module(on_big, small);
}

RModule intermediate_extension_from(const RModule& seed, std::size_t chamber) {
  seed.require_validated("intermediate_extension_from");
  if (!seed.poset().is_chamber(chamber))
    throw InputError("intermediate_extension_from: not a chamber");

  Subspace big = t_submodule(seed, chamber);
  RModule on_big = submodule_module(seed, big);
  Subspace small = n_submodule(on_big, chamber);
  RModule p = quotient_module(on_big, small);

  // Contract: nothing left over or hidden on the closed complement.
  if (t_submodule(p, chamber).dim() != p.dim)
    throw Error("intermediate extension: i_upper_star(P) != 0");
  if (n_submodule(p, chamber).dim() != 0)
    throw Error("intermediate extension: i_upper_shriek(P) != 0");

  // Contract: the open restriction is preserved through the canonical
  // inclusion-then-projection of e-parts.
  Presentation pres = salvetti_presentation(seed.poset(), chamber);
  LocalSystemRep ls_seed = j_restrict(seed, pres);
  LocalSystemRep ls_p = j_restrict(p, pres);
  // e_A seed -> coordinates on T_e -> quotient coordinates.
  Matrix into_big = solve(big.basis_matrix(), ls_seed.space_basis);
  // Rebuild the quotient projection used by quotient_module: coordinates of
  // the complement part relative to [basis(small) | complement].
  {
    const std::size_t n = on_big.dim, k = small.dim();
    std::vector<std::size_t> comp;
    Subspace cur = small;
    for (std::size_t i = 0; i < n; ++i) {
      Vec e(n, Rat(0));
      e[i] = 1;
      if (!cur.contains(e)) {
        comp.push_back(i);
        cur = cur.sum(Subspace::span_of(n, {e}));
      }
    }
    Matrix full(n, n);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) full(i, j) = small.basis()[j][i];
    for (std::size_t j = 0; j < comp.size(); ++j) full(comp[j], k + j) = 1;
    Matrix coords = inverse(full) * into_big;
    Matrix canonical(comp.size(), coords.cols());
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t j = 0; j < coords.cols(); ++j)
        canonical(i, j) = coords(k + i, j);
    // canonical: e_A seed -> P ambient; must land in e_A P and intertwine.
    if (!(p.act[chamber] * canonical == canonical))
      throw Error("intermediate extension: canonical map escapes e P");
    Matrix in_ls = solve(ls_p.space_basis, canonical);
    if (!is_invertible(in_ls))
      throw Error("intermediate extension: open restriction not preserved");
    for (std::size_t g = 0; g < pres.pi1_generators.size(); ++g)
      if (!(in_ls * ls_seed.monodromy[g] == ls_p.monodromy[g] * in_ls))
        throw Error("intermediate extension: monodromy not preserved");
  }
  return p;
}

SupportReport support(const RModule& m) {
  m.require_validated("support");
  SupportReport rep;
  for (std::size_t c = 0; c < m.poset().size(); ++c)
    if (!m.act[c].is_zero()) rep.support_faces.push_back(c);

  // Maximal support faces, each spanning a candidate flat.
  const Arrangement& arr = m.poset().arrangement();
  std::vector<std::size_t> maximal;
  for (std::size_t c : rep.support_faces) {
    bool is_max = true;
    for (std::size_t d : rep.support_faces)
      if (d != c && m.poset().leq(c, d)) is_max = false;
    if (is_max) maximal.push_back(c);
  }
  for (std::size_t c : maximal) {
    std::vector<std::size_t> zeros;
    for (std::size_t h = 0; h < arr.normals.size(); ++h)
      if (m.poset().face(c).signs[h] == Sign::zero) zeros.push_back(h);
    Flat f = flat_from(arr, zeros);
    bool dup = false;
    for (const Flat& g : rep.maximal_flats)
      if (g.space == f.space) dup = true;
    if (!dup) rep.maximal_flats.push_back(std::move(f));
  }

  std::vector<char> covered(m.poset().size(), 0);
  for (const Flat& f : rep.maximal_flats)
    for (std::size_t c : faces_in_flat(m.poset(), f)) covered[c] = 1;
  rep.closed = true;
  std::vector<char> in_support(m.poset().size(), 0);
  for (std::size_t c : rep.support_faces) in_support[c] = 1;
  for (std::size_t c = 0; c < m.poset().size(); ++c)
    if (covered[c] != in_support[c]) rep.closed = false;
  return rep;
}

bool annihilated_by_iz(const RModule& m, const std::vector<Flat>& flats) {
  m.require_validated("annihilated_by_iz");
  std::vector<char> in_z(m.poset().size(), 0);
  for (const Flat& f : flats)
    for (std::size_t c : faces_in_flat(m.poset(), f)) in_z[c] = 1;
  for (std::size_t c = 0; c < m.poset().size(); ++c)
    if (!in_z[c] && !m.act[c].is_zero()) return false;
  return true;
}

Word map_word(const Restriction& restr, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w)
    out.push_back(
        {restr.to_ambient[l.src], restr.to_ambient[l.tgt], l.positive});
  return out;
}

RModule rho_pullback(const Workbench& ambient, const Restriction& restr,
                     const RModule& m_z) {
  m_z.require_validated("rho_pullback");
  if (!(m_z.poset().arrangement().normals == restr.restricted.normals))
    throw InputError("rho_pullback: module does not live on the restriction");
  RModule m;
  m.ctx = ambient;
  m.dim = m_z.dim;
  m.act.assign(ambient.poset->size(), Matrix(m_z.dim, m_z.dim));
  for (std::size_t i = 0; i < restr.to_ambient.size(); ++i)
    m.act[restr.to_ambient[i]] = m_z.act[i];
  ValidationReport rep = validate_module(m);
  if (!rep.ok())
    throw ValidationFailedError("rho_pullback:\n" + rep.to_string());

  // The chamber restriction over the flat matches the input's own: evaluate
  // the restricted presentation's loops both ways.
  if (!restr.poset_z.chambers().empty()) {
    std::size_t bz = restr.poset_z.chambers().front();
    Presentation pz = salvetti_presentation(restr.poset_z, bz);
    for (const Word& w : pz.pi1_generators) {
      Matrix here = evaluate_word(m, map_word(restr, w));
      Matrix there = evaluate_word(m_z, w);
      if (!(here == there))
        throw Error("rho_pullback: transported monodromy mismatch");
    }
  }
  return m;
}

RModule ic_on_stratum(const Workbench& ambient, const Restriction& restr,
                      const RModule& seed_z, std::size_t chamber_b) {
  seed_z.require_validated("ic_on_stratum");
  // chamber_b must be a maximal face of C_Z, i.e. the image of a chamber of
  // the restricted arrangement.
  bool maximal = false;
  for (std::size_t cz : restr.poset_z.chambers())
    if (restr.to_ambient[cz] == chamber_b) maximal = true;
  if (!maximal)
    throw InputError("ic_on_stratum: face is not maximal in C_Z");

  RModule transported = rho_pullback(ambient, restr, seed_z);
  RModule p = purify(transported, chamber_b);

  if (t_submodule(p, chamber_b).dim() != p.dim)
    throw Error("ic_on_stratum: i_upper_star != 0 relative to the stratum");
  if (n_submodule(p, chamber_b).dim() != 0)
    throw Error("ic_on_stratum: i_upper_shriek != 0 relative to the stratum");
  return p;
}

}  // namespace pervarr
