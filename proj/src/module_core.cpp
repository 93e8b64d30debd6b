#include "pervarr/module_core.hpp"

#include <algorithm>
#include <sstream>

#include "pervarr/error.hpp"

namespace pervarr {

Workbench Workbench::make(Arrangement arr, Exec exec) {
  return make(enumerate_faces(arr), exec);
}

Workbench Workbench::make(FacePoset poset, Exec exec) {
  Workbench w;
  w.poset = std::make_shared<const FacePoset>(std::move(poset));
  w.collinear = std::make_shared<const CollinearTable>(*w.poset, exec);
  return w;
}

bool Workbench::same_arrangement(const Workbench& o) const {
  return poset->arrangement().dim == o.poset->arrangement().dim &&
         poset->arrangement().normals == o.poset->arrangement().normals;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v << "\n";
  return os.str();
}

const Matrix& RModule::s(std::size_t a, std::size_t b) const {
  auto it = loc_inv.find({a, b});
  if (it == loc_inv.end())
    throw InvalidModuleError("missing localization inverse s(" +
                             poset().face_name(a) + "," + poset().face_name(b) +
                             ")");
  return it->second;
}

void RModule::require_validated(const char* who) const {
  if (!validated)
    throw InvalidModuleError(std::string(who) + ": module not validated");
}

ValidationReport validate_module(RModule& m, Exec exec) {
  ValidationReport rep;
  const FacePoset& poset = m.poset();
  const std::size_t n = poset.size();
  m.validated = false;
  m.loc_inv.clear();

  if (m.act.size() != n) {
    rep.violations.push_back("shape: expected one action per face");
    return rep;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (m.act[i].rows() != m.dim || m.act[i].cols() != m.dim) {
      rep.violations.push_back("shape: action at " + poset.face_name(i) +
                               " is not dim x dim");
      return rep;
    }

  if (!m.act[poset.zero_face()].is_identity())
    rep.violations.push_back("unit: action of the zero face is not the identity");

  for (std::size_t i = 0; i < n; ++i)
    if (!(m.act[i] * m.act[i] == m.act[i]))
      rep.violations.push_back("R1 violated at face " + poset.face_name(i));

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !poset.leq(a, b)) continue;
      if (!(m.act[a] * m.act[b] == m.act[b]) ||
          !(m.act[b] * m.act[a] == m.act[b]))
        rep.violations.push_back("R3 violated at pair (" + poset.face_name(a) +
                                 "," + poset.face_name(b) + ")");
    }

  // R2 sweep over all ordered collinear triples. Pairwise products are
  // precomputed so each instance costs one matrix product and a compare.
  const CollinearTable& tbl = *m.ctx.collinear;
  std::vector<Matrix> pairprod(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) pairprod[a * n + c] = m.act[a] * m.act[c];

  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(n) * n * n;
  std::vector<char> bad(total, 0);
  auto check_triple = [&](std::ptrdiff_t idx) {
    std::size_t a = idx / (n * n), r = idx % (n * n), b = r / n, c = r % n;
    if (!tbl(a, b, c)) return;
    if (!(m.act[a] * pairprod[b * n + c] == pairprod[a * n + c])) bad[idx] = 1;
  };
#if defined(PERVARR_HAVE_OPENMP)
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) check_triple(idx);
  } else
#else
  (void)exec;
#endif
  {
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) check_triple(idx);
  }
  for (std::ptrdiff_t idx = 0; idx < total; ++idx)
    if (bad[idx]) {
      std::size_t a = idx / (n * n), r = idx % (n * n);
      rep.violations.push_back("R2 violated at collinear triple (" +
                               poset.face_name(a) + "," +
                               poset.face_name(r / n) + "," +
                               poset.face_name(r % n) + ")");
    }

  for (const auto& [a, b] : poset.opposing_pairs()) {
    Matrix x = m.act[a] * m.act[b] * m.act[a] +
               (Matrix::identity(m.dim) - m.act[a]);
    try {
      m.loc_inv[{a, b}] = inverse(x);
    } catch (const SingularError&) {
      rep.violations.push_back("localization not invertible at opposing pair (" +
                               poset.face_name(a) + "," + poset.face_name(b) +
                               ")");
    }
  }

  if (rep.ok()) m.validated = true;
  return rep;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> comparable_pairs(
    const FacePoset& poset) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < poset.size(); ++a)
    for (std::size_t b = 0; b < poset.size(); ++b)
      if (poset.leq(a, b)) out.emplace_back(a, b);  // includes (a, a)
  return out;
}

const Matrix& rep_gamma(const DoubleRep& e, std::size_t lo, std::size_t hi) {
  auto it = e.gamma.find({lo, hi});
  if (it == e.gamma.end()) throw Error("missing gamma map");
  return it->second;
}

const Matrix& rep_delta(const DoubleRep& e, std::size_t hi, std::size_t lo) {
  auto it = e.delta.find({hi, lo});
  if (it == e.delta.end()) throw Error("missing delta map");
  return it->second;
}

}  // namespace

ValidationReport validate_double_rep(const DoubleRep& e) {
  ValidationReport rep;
  const FacePoset& poset = e.poset();
  const std::size_t n = poset.size();
  if (e.dims.size() != n) {
    rep.violations.push_back("shape: expected one space per face");
    return rep;
  }
  auto pairs = comparable_pairs(poset);
  for (const auto& [lo, hi] : pairs) {
    auto g = e.gamma.find({lo, hi});
    auto d = e.delta.find({hi, lo});
    if (g == e.gamma.end() || d == e.delta.end()) {
      rep.violations.push_back("shape: missing maps at pair (" +
                               poset.face_name(lo) + "," + poset.face_name(hi) +
                               ")");
      return rep;
    }
    if (g->second.rows() != e.dims[hi] || g->second.cols() != e.dims[lo] ||
        d->second.rows() != e.dims[lo] || d->second.cols() != e.dims[hi]) {
      rep.violations.push_back("shape: map sizes at pair (" +
                               poset.face_name(lo) + "," + poset.face_name(hi) +
                               ")");
      return rep;
    }
  }

  for (std::size_t c = 0; c < n; ++c)
    if (!rep_gamma(e, c, c).is_identity() || !rep_delta(e, c, c).is_identity())
      rep.violations.push_back("identity maps violated at face " +
                               poset.face_name(c));

  for (std::size_t c1 = 0; c1 < n; ++c1)
    for (std::size_t c2 = 0; c2 < n; ++c2) {
      if (!poset.leq(c1, c2)) continue;
      for (std::size_t c3 = 0; c3 < n; ++c3) {
        if (!poset.leq(c2, c3)) continue;
        if (!(rep_gamma(e, c2, c3) * rep_gamma(e, c1, c2) ==
              rep_gamma(e, c1, c3)) ||
            !(rep_delta(e, c2, c1) * rep_delta(e, c3, c2) ==
              rep_delta(e, c3, c1)))
          rep.violations.push_back("composition violated on chain (" +
                                   poset.face_name(c1) + "," +
                                   poset.face_name(c2) + "," +
                                   poset.face_name(c3) + ")");
      }
    }

  for (const auto& [lo, hi] : pairs)
    if (lo != hi &&
        !(rep_gamma(e, lo, hi) * rep_delta(e, hi, lo)).is_identity())
      rep.violations.push_back("monotonicity violated at pair (" +
                               poset.face_name(lo) + "," + poset.face_name(hi) +
                               ")");
  if (!rep.ok()) return rep;  // phi needs monotonicity

  auto phi_via_zero = [&](std::size_t a, std::size_t b) {
    std::size_t z = poset.zero_face();
    return rep_gamma(e, z, b) * rep_delta(e, a, z);
  };

  const CollinearTable& tbl = *e.ctx.collinear;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (!tbl(a, b, c)) continue;
        if (!(phi_via_zero(a, c) == phi_via_zero(b, c) * phi_via_zero(a, b)))
          rep.violations.push_back("transitivity violated at collinear triple (" +
                                   poset.face_name(a) + "," +
                                   poset.face_name(b) + "," +
                                   poset.face_name(c) + ")");
      }

  for (const auto& [a, b] : poset.opposing_pairs())
    if (!is_invertible(phi_via_zero(a, b)))
      rep.violations.push_back("invertibility violated at opposing pair (" +
                               poset.face_name(a) + "," + poset.face_name(b) +
                               ")");
  return rep;
}

Matrix phi(const DoubleRep& e, std::size_t a, std::size_t b) {
  const FacePoset& poset = e.poset();
  std::size_t z = poset.zero_face();
  Matrix result = rep_gamma(e, z, b) * rep_delta(e, a, z);
  for (std::size_t c = 0; c < poset.size(); ++c)
    if (poset.leq(c, a) && poset.leq(c, b))
      if (!(rep_gamma(e, c, b) * rep_delta(e, a, c) == result))
        throw Error("phi depends on the choice of common lower bound");
  return result;
}

RModule collapse(const DoubleRep& e) {
  ValidationReport rep = validate_double_rep(e);
  if (!rep.ok()) throw NotInAError("collapse: " + rep.to_string());
  const FacePoset& poset = e.poset();
  std::size_t z = poset.zero_face();
  RModule m;
  m.ctx = e.ctx;
  m.dim = e.dims[z];
  m.act.reserve(poset.size());
  for (std::size_t c = 0; c < poset.size(); ++c)
    m.act.push_back(rep_delta(e, c, z) * rep_gamma(e, z, c));
  ValidationReport check = validate_module(m);
  if (!check.ok())
    throw Error("collapse produced an invalid module:\n" + check.to_string());
  return m;
}

DoubleRep expand(const RModule& m) {
  m.require_validated("expand");
  const FacePoset& poset = m.poset();
  DoubleRep e;
  e.ctx = m.ctx;
  e.dims.resize(poset.size());
  std::vector<Matrix> basis(poset.size());
  for (std::size_t c = 0; c < poset.size(); ++c) {
    Subspace img = image_basis(m.act[c]);
    basis[c] = img.basis_matrix();
    e.dims[c] = img.dim();
  }
  for (std::size_t lo = 0; lo < poset.size(); ++lo)
    for (std::size_t hi = 0; hi < poset.size(); ++hi) {
      if (!poset.leq(lo, hi)) continue;
      // gamma: multiplication by e_hi, delta: inclusion (multiplication by
      // e_lo acts as the identity on the image of e_hi).
      e.gamma[{lo, hi}] = solve(basis[hi], m.act[hi] * basis[lo]);
      e.delta[{hi, lo}] = solve(basis[lo], basis[hi]);
    }
  return e;
}

ValidationReport nat_iso_check(const DoubleRep& e) {
  ValidationReport rep = validate_double_rep(e);
  if (!rep.ok()) return rep;
  const FacePoset& poset = e.poset();
  std::size_t z = poset.zero_face();

  // The collapsed module's actions, built inline (the rep is already valid).
  std::vector<Matrix> act;
  for (std::size_t c = 0; c < poset.size(); ++c)
    act.push_back(rep_delta(e, c, z) * rep_gamma(e, z, c));

  for (std::size_t c = 0; c < poset.size(); ++c) {
    Matrix phi_cz = rep_delta(e, c, z);  // E_C -> E_Z, lands in e_C E_Z
    if (!(act[c] * phi_cz == phi_cz))
      rep.violations.push_back("iota image escapes e_C E_Z at face " +
                               poset.face_name(c));
    if (rank(phi_cz) != e.dims[c] || rank(act[c]) != e.dims[c])
      rep.violations.push_back("iota not an isomorphism at face " +
                               poset.face_name(c));
  }
  for (std::size_t lo = 0; lo < poset.size(); ++lo)
    for (std::size_t hi = 0; hi < poset.size(); ++hi) {
      if (!poset.leq(lo, hi) || lo == hi) continue;
      Matrix phi_lo = rep_delta(e, lo, z), phi_hi = rep_delta(e, hi, z);
      if (!(phi_hi * rep_gamma(e, lo, hi) == act[hi] * phi_lo))
        rep.violations.push_back("gamma square fails at pair (" +
                                 poset.face_name(lo) + "," +
                                 poset.face_name(hi) + ")");
      if (!(phi_lo * rep_delta(e, hi, lo) == act[lo] * phi_hi))
        rep.violations.push_back("delta square fails at pair (" +
                                 poset.face_name(lo) + "," +
                                 poset.face_name(hi) + ")");
    }
  return rep;
}

std::vector<ModuleMorphism> hom_space(const RModule& m1, const RModule& m2) {
  if (!m1.ctx.same_arrangement(m2.ctx))
    throw DimensionError("hom_space: different arrangements");
  const std::size_t d1 = m1.dim, d2 = m2.dim, nvars = d1 * d2;
  const std::size_t nfaces = m1.poset().size();
  Matrix sys(nfaces * nvars, nvars);
  std::size_t row = 0;
  for (std::size_t c = 0; c < nfaces; ++c) {
    const Matrix& a1 = m1.act[c];
    const Matrix& a2 = m2.act[c];
    // Equation (i,j): sum_k X[i,k] a1[k,j] - sum_k a2[i,k] X[k,j] = 0,
    // X vectorized row-major.
    for (std::size_t i = 0; i < d2; ++i)
      for (std::size_t j = 0; j < d1; ++j) {
        for (std::size_t k = 0; k < d1; ++k) sys(row, i * d1 + k) += a1(k, j);
        for (std::size_t k = 0; k < d2; ++k) sys(row, k * d1 + j) -= a2(i, k);
        ++row;
      }
  }
  Subspace sols = kernel_basis(sys);
  std::vector<ModuleMorphism> out;
  for (const Vec& v : sols.basis()) {
    Matrix x(d2, d1);
    for (std::size_t i = 0; i < d2; ++i)
      for (std::size_t j = 0; j < d1; ++j) x(i, j) = v[i * d1 + j];
    out.push_back({std::move(x)});
  }
  return out;
}

bool modules_isomorphic(const RModule& m1, const RModule& m2) {
  if (m1.dim != m2.dim) return false;
  std::vector<Vec> rows;
  for (const auto& h : hom_space(m1, m2)) {
    Vec v;
    v.reserve(m1.dim * m1.dim);
    for (std::size_t i = 0; i < m2.dim; ++i)
      for (std::size_t j = 0; j < m1.dim; ++j) v.push_back(h.matrix(i, j));
    rows.push_back(std::move(v));
  }
  return invertible_in_span(Subspace::span_of(m1.dim * m1.dim, rows), m1.dim);
}

namespace {

RModule finish_constructor(RModule m, const char* who) {
  ValidationReport rep = validate_module(m);
  if (!rep.ok())
    throw ValidationFailedError(std::string(who) + ":\n" + rep.to_string());
  return m;
}

}  // namespace

RModule constant_module(const Workbench& ctx, std::size_t d) {
  RModule m;
  m.ctx = ctx;
  m.dim = d;
  m.act.assign(ctx.poset->size(), Matrix::identity(d));
  return finish_constructor(std::move(m), "constant_module");
}

RModule one_hyperplane_extension(const Workbench& ctx, const Matrix& t) {
  if (ctx.poset->arrangement().normals.size() != 1)
    throw InputError("one_hyperplane_extension needs a one-hyperplane arrangement");
  if (!is_invertible(t))
    throw SingularError("one_hyperplane_extension: monodromy must be invertible");
  const std::size_t k = t.rows(), d = 2 * k;
  Matrix plus(d, d), minus(d, d);
  for (std::size_t i = 0; i < k; ++i) {
    plus(i, i) = 1;
    for (std::size_t j = 0; j < k; ++j) plus(i, k + j) = t(i, j);
    minus(k + i, i) = 1;
    minus(k + i, k + i) = 1;
  }
  RModule m;
  m.ctx = ctx;
  m.dim = d;
  m.act.resize(3);
  m.act[ctx.poset->index_of(sign_vector_of_string("+"))] = plus;
  m.act[ctx.poset->index_of(sign_vector_of_string("-"))] = minus;
  m.act[ctx.poset->zero_face()] = Matrix::identity(d);
  return finish_constructor(std::move(m), "one_hyperplane_extension");
}

RModule one_hyperplane_ab(const Workbench& ctx, const Rat& a, const Rat& b) {
  if (ctx.poset->arrangement().normals.size() != 1)
    throw InputError("one_hyperplane_ab needs a one-hyperplane arrangement");
  Matrix plus(2, 2), minus(2, 2);
  plus(0, 0) = 1;
  plus(0, 1) = a;
  minus(1, 0) = b;
  minus(1, 1) = 1;
  RModule m;
  m.ctx = ctx;
  m.dim = 2;
  m.act.resize(3);
  m.act[ctx.poset->index_of(sign_vector_of_string("+"))] = plus;
  m.act[ctx.poset->index_of(sign_vector_of_string("-"))] = minus;
  m.act[ctx.poset->zero_face()] = Matrix::identity(2);
  return finish_constructor(std::move(m), "one_hyperplane_ab");
}

RModule direct_sum(const RModule& m1, const RModule& m2) {
  if (!m1.ctx.same_arrangement(m2.ctx))
    throw DimensionError("direct_sum: different arrangements");
  RModule m;
  m.ctx = m1.ctx;
  m.dim = m1.dim + m2.dim;
  for (std::size_t c = 0; c < m1.poset().size(); ++c)
    m.act.push_back(block_diag(m1.act[c], m2.act[c]));
  return finish_constructor(std::move(m), "direct_sum");
}

RModule external_tensor(const RModule& m1, const RModule& m2) {
  const Arrangement& a1 = m1.poset().arrangement();
  const Arrangement& a2 = m2.poset().arrangement();
  Arrangement prod;
  prod.dim = a1.dim + a2.dim;
  for (const Vec& f : a1.normals) {
    Vec row(prod.dim, Rat(0));
    std::copy(f.begin(), f.end(), row.begin());
    prod.normals.push_back(row);
  }
  for (const Vec& f : a2.normals) {
    Vec row(prod.dim, Rat(0));
    std::copy(f.begin(), f.end(), row.begin() + a1.dim);
    prod.normals.push_back(row);
  }
  Workbench ctx = Workbench::make(prod);
  RModule m;
  m.ctx = ctx;
  m.dim = m1.dim * m2.dim;
  m.act.resize(ctx.poset->size());
  for (std::size_t i = 0; i < ctx.poset->size(); ++i) {
    const SignVector& s = ctx.poset->face(i).signs;
    SignVector s1(s.begin(), s.begin() + a1.normals.size());
    SignVector s2(s.begin() + a1.normals.size(), s.end());
    m.act[i] = kronecker(m1.act[m1.poset().index_of(s1)],
                         m2.act[m2.poset().index_of(s2)]);
  }
  return finish_constructor(std::move(m), "external_tensor");
}

Subspace stalk(const RModule& m, std::size_t p, std::size_t q, std::size_t c) {
  m.require_validated("stalk");
  if (!m.poset().leq(p, c)) return Subspace(m.dim);
  return image_basis(m.act[compose(m.poset(), c, q)]);
}

RModule submodule_module(const RModule& m, const Subspace& s) {
  m.require_validated("submodule_module");
  for (std::size_t c = 0; c < m.poset().size(); ++c)
    for (const Vec& b : s.basis())
      if (!s.contains(m.act[c] * b))
        throw Error("submodule_module: subspace not invariant under " +
                    m.poset().face_name(c));
  Matrix basis = s.basis_matrix();
  RModule sub;
  sub.ctx = m.ctx;
  sub.dim = s.dim();
  for (std::size_t c = 0; c < m.poset().size(); ++c)
    sub.act.push_back(solve(basis, m.act[c] * basis));
  return finish_constructor(std::move(sub), "submodule_module");
}

namespace {

std::vector<std::size_t> greedy_complement(const Subspace& s, bool reversed) {
  const std::size_t n = s.ambient_dim();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = reversed ? n - 1 - i : i;
  Subspace cur = s;
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    Vec e(n, Rat(0));
    e[i] = 1;
    if (!cur.contains(e)) {
      kept.push_back(i);
      cur = cur.sum(Subspace::span_of(n, {e}));
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

// Quotient action matrices relative to [basis(S) | e_complement].
std::vector<Matrix> induced_actions(const RModule& m, const Subspace& s,
                                    const std::vector<std::size_t>& comp) {
  const std::size_t n = m.dim, k = s.dim(), q = comp.size();
  Matrix full(n, n);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) full(i, j) = s.basis()[j][i];
  for (std::size_t j = 0; j < q; ++j) full(comp[j], k + j) = 1;
  Matrix full_inv = inverse(full);
  std::vector<Matrix> out;
  for (std::size_t c = 0; c < m.poset().size(); ++c) {
    Matrix img(n, q);
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t i = 0; i < n; ++i) img(i, j) = m.act[c](i, comp[j]);
    Matrix coords = full_inv * img;
    Matrix red(q, q);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) red(i, j) = coords(k + i, j);
    out.push_back(std::move(red));
  }
  return out;
}

}  // namespace

RModule quotient_module(const RModule& m, const Subspace& s) {
  m.require_validated("quotient_module");
  for (std::size_t c = 0; c < m.poset().size(); ++c)
    for (const Vec& b : s.basis())
      if (!s.contains(m.act[c] * b))
        throw Error("quotient_module: subspace not invariant under " +
                    m.poset().face_name(c));

  auto comp1 = greedy_complement(s, false);
  auto acts1 = induced_actions(m, s, comp1);

  // Independence of the complement choice: the second computation must agree
  // through the canonical change of basis.
  auto comp2 = greedy_complement(s, true);
  if (comp2 != comp1) {
    auto acts2 = induced_actions(m, s, comp2);
    const std::size_t n = m.dim, k = s.dim(), q = comp1.size();
    Matrix full(n, n);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) full(i, j) = s.basis()[j][i];
    for (std::size_t j = 0; j < q; ++j) full(comp1[j], k + j) = 1;
    Matrix full_inv = inverse(full);
    Matrix change(q, q);  // comp2 coordinates expressed in comp1 quotient coords
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t i = 0; i < q; ++i)
        change(i, j) = full_inv(k + i, comp2[j]);
    for (std::size_t c = 0; c < m.poset().size(); ++c)
      if (!(acts1[c] * change == change * acts2[c]))
        throw Error("quotient actions depend on the complement choice");
  }

  RModule quo;
  quo.ctx = m.ctx;
  quo.dim = comp1.size();
  quo.act = std::move(acts1);
  return finish_constructor(std::move(quo), "quotient_module");
}

}  // namespace pervarr
