#include "pervarr/arrangement.hpp"

#include <algorithm>
#include <cassert>

#include "pervarr/error.hpp"

#if defined(PERVARR_HAVE_OPENMP)
#include <omp.h>
#endif

namespace pervarr {

std::string sign_string(const SignVector& s) {
  std::string out;
  out.reserve(s.size());
  for (Sign x : s)
    out.push_back(x == Sign::plus ? '+' : (x == Sign::minus ? '-' : '0'));
  return out;
}

SignVector sign_vector_of_string(const std::string& s) {
  SignVector out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '+': out.push_back(Sign::plus); break;
      case '-': out.push_back(Sign::minus); break;
      case '0': out.push_back(Sign::zero); break;
      default: throw InputError("bad sign character in \"" + s + "\"");
    }
  }
  return out;
}

Sign sign_of_value(const Rat& v) {
  int s = sgn(v);
  return s > 0 ? Sign::plus : (s < 0 ? Sign::minus : Sign::zero);
}

void validate_arrangement(const Arrangement& arr) {
  for (const Vec& f : arr.normals) {
    if (f.size() != arr.dim) throw InputError("normal has wrong length");
    if (is_zero_vec(f)) throw InputError("zero normal");
  }
  // Pairwise non-proportional: rank of each pair must be 2.
  for (std::size_t i = 0; i < arr.normals.size(); ++i)
    for (std::size_t j = i + 1; j < arr.normals.size(); ++j) {
      Matrix pair(2, arr.dim);
      for (std::size_t k = 0; k < arr.dim; ++k) {
        pair(0, k) = arr.normals[i][k];
        pair(1, k) = arr.normals[j][k];
      }
      if (rank(pair) < 2)
        throw InputError("proportional normals define the same hyperplane");
    }
}

SignVector signs_at(const Arrangement& arr, const Vec& point) {
  SignVector s;
  s.reserve(arr.normals.size());
  for (const Vec& f : arr.normals) s.push_back(sign_of_value(dot(f, point)));
  return s;
}

namespace {

std::size_t codim_of(const Arrangement& arr, const SignVector& signs) {
  std::vector<Vec> zero_normals;
  for (std::size_t h = 0; h < signs.size(); ++h)
    if (signs[h] == Sign::zero) zero_normals.push_back(arr.normals[h]);
  if (zero_normals.empty()) return 0;
  Matrix m(zero_normals.size(), arr.dim);
  for (std::size_t i = 0; i < zero_normals.size(); ++i)
    for (std::size_t j = 0; j < arr.dim; ++j) m(i, j) = zero_normals[i][j];
  return rank(m);
}

void push_sign_constraint(StrictSystem& sys, const Vec& row, Sign s) {
  if (s == Sign::zero) {
    sys.eqs.push_back(row);
  } else if (s == Sign::plus) {
    sys.gts.push_back(row);
  } else {
    Vec neg(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) neg[i] = -row[i];
    sys.gts.push_back(neg);
  }
}

}  // namespace

FacePoset::FacePoset(Arrangement arr, std::vector<Face> faces)
    : arr_(std::move(arr)), faces_(std::move(faces)) {
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    return sign_string(a.signs) < sign_string(b.signs);
  });
  bool zero_seen = false;
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    index_[sign_string(faces_[i].signs)] = i;
    bool all_zero = true, any_zero = false;
    for (Sign s : faces_[i].signs) {
      if (s == Sign::zero)
        any_zero = true;
      else
        all_zero = false;
    }
    if (all_zero) {
      zero_face_ = i;
      zero_seen = true;
    }
    if (!any_zero || faces_[i].signs.empty()) chambers_.push_back(i);
    if (faces_[i].codim == 2) codim2_faces_.push_back(i);
  }
  if (!zero_seen) throw Error("poset lacks the zero face");
  if (index_.size() != faces_.size()) throw Error("duplicate faces");

  // Opposition cache. The wall of an opposing pair is forced: common sign
  // where the two faces agree, zero where they differ.
  for (std::size_t a = 0; a < faces_.size(); ++a) {
    for (std::size_t b = 0; b < faces_.size(); ++b) {
      if (a == b) continue;
      const SignVector& sa = faces_[a].signs;
      const SignVector& sb = faces_[b].signs;
      if (faces_[a].codim != faces_[b].codim) continue;
      bool same_zeroset = true;
      for (std::size_t h = 0; h < sa.size(); ++h)
        if ((sa[h] == Sign::zero) != (sb[h] == Sign::zero)) same_zeroset = false;
      if (!same_zeroset) continue;
      SignVector wall(sa.size());
      for (std::size_t h = 0; h < sa.size(); ++h)
        wall[h] = (sa[h] == sb[h]) ? sa[h] : Sign::zero;
      auto it = index_.find(sign_string(wall));
      if (it == index_.end()) continue;
      std::size_t w = it->second;
      if (faces_[w].codim != faces_[a].codim + 1) continue;
      wall_[{a, b}] = w;
      opposing_pairs_.emplace_back(a, b);
    }
  }
}

bool FacePoset::is_chamber(std::size_t i) const {
  return faces_[i].codim == 0;
}

std::size_t FacePoset::index_of(const SignVector& s) const {
  auto it = index_.find(sign_string(s));
  if (it == index_.end())
    throw InputError("unknown face " + sign_string(s));
  return it->second;
}

std::optional<std::size_t> FacePoset::find(const SignVector& s) const {
  auto it = index_.find(sign_string(s));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FacePoset::leq(std::size_t a, std::size_t b) const {
  const SignVector& sa = faces_[a].signs;
  const SignVector& sb = faces_[b].signs;
  for (std::size_t h = 0; h < sa.size(); ++h)
    if (sa[h] != Sign::zero && sa[h] != sb[h]) return false;
  return true;
}

std::optional<std::size_t> FacePoset::wall_between(std::size_t a,
                                                   std::size_t b) const {
  auto it = wall_.find({a, b});
  if (it == wall_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> FacePoset::chamber_neighbors(std::size_t chamber) const {
  std::vector<std::size_t> out;
  for (std::size_t c : chambers_)
    if (c != chamber && wall_.count({chamber, c})) out.push_back(c);
  return out;
}

FacePoset enumerate_faces(const Arrangement& arr) {
  validate_arrangement(arr);
  struct Partial {
    SignVector signs;
    Vec witness;
  };
  std::vector<Partial> cur;
  cur.push_back({SignVector{}, Vec(arr.dim, Rat(0))});
  for (std::size_t k = 0; k < arr.normals.size(); ++k) {
    const Vec& f = arr.normals[k];
    std::vector<Partial> next;
    for (const Partial& p : cur) {
      Sign own = sign_of_value(dot(f, p.witness));
      for (Sign cand : {Sign::plus, Sign::zero, Sign::minus}) {
        SignVector s = p.signs;
        s.push_back(cand);
        if (cand == own) {
          next.push_back({std::move(s), p.witness});
          continue;
        }
        StrictSystem sys;
        sys.dim = arr.dim;
        for (std::size_t h = 0; h < k; ++h)
          push_sign_constraint(sys, arr.normals[h], p.signs[h]);
        push_sign_constraint(sys, f, cand);
        if (auto w = feasible_point(sys)) next.push_back({std::move(s), *w});
      }
    }
    cur = std::move(next);
  }
  std::vector<Face> faces;
  faces.reserve(cur.size());
  for (Partial& p : cur) {
    // Witnesses must exactly realize the stated signs.
    if (signs_at(arr, p.witness) != p.signs) throw Error("witness drift");
    faces.push_back({p.signs, std::move(p.witness), codim_of(arr, p.signs)});
  }
  return FacePoset(arr, std::move(faces));
}

namespace {

// Per-hyperplane necessary conditions for a + c landing in b; when no
// hyperplane strictly separates A and C they are also sufficient and the
// LP can be skipped.
enum class Quick { yes, no, need_lp };

Quick collinear_quick(const FacePoset& poset, std::size_t a, std::size_t b,
                      std::size_t c) {
  const SignVector& sa = poset.face(a).signs;
  const SignVector& sb = poset.face(b).signs;
  const SignVector& sc = poset.face(c).signs;
  bool mixed = false;
  for (std::size_t h = 0; h < sa.size(); ++h) {
    if (sa[h] != Sign::zero && sc[h] != Sign::zero && sa[h] != sc[h]) {
      mixed = true;
      continue;
    }
    Sign forced = sa[h] != Sign::zero ? sa[h] : sc[h];
    if (sb[h] != forced) return Quick::no;
  }
  return mixed ? Quick::need_lp : Quick::yes;
}

bool collinear_lp(const FacePoset& poset, std::size_t a, std::size_t b,
                  std::size_t c) {
  const Arrangement& arr = poset.arrangement();
  const std::size_t n = arr.dim;
  StrictSystem sys;
  sys.dim = 2 * n;
  for (std::size_t h = 0; h < arr.normals.size(); ++h) {
    Vec row_a(2 * n, Rat(0)), row_c(2 * n, Rat(0)), row_sum(2 * n, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
      row_a[j] = arr.normals[h][j];
      row_c[n + j] = arr.normals[h][j];
      row_sum[j] = arr.normals[h][j];
      row_sum[n + j] = arr.normals[h][j];
    }
    push_sign_constraint(sys, row_a, poset.face(a).signs[h]);
    push_sign_constraint(sys, row_c, poset.face(c).signs[h]);
    push_sign_constraint(sys, row_sum, poset.face(b).signs[h]);
  }
  return feasible_point(sys).has_value();
}

}  // namespace

bool collinear(const FacePoset& poset, std::size_t a, std::size_t b,
               std::size_t c) {
  switch (collinear_quick(poset, a, b, c)) {
    case Quick::yes: return true;
    case Quick::no: return false;
    case Quick::need_lp: return collinear_lp(poset, a, b, c);
  }
  return false;
}

CollinearTable::CollinearTable(const FacePoset& poset, Exec exec)
    : n_(poset.size()), table_(n_ * n_ * n_, 0) {
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(n_ * n_ * n_);
#if defined(PERVARR_HAVE_OPENMP)
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
      std::size_t a = idx / (n_ * n_), r = idx % (n_ * n_);
      table_[idx] = collinear(poset, a, r / n_, r % n_) ? 1 : 0;
    }
    return;
  }
#else
  (void)exec;
#endif
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    std::size_t a = idx / (n_ * n_), r = idx % (n_ * n_);
    table_[idx] = collinear(poset, a, r / n_, r % n_) ? 1 : 0;
  }
}

bool CollinearTable::operator()(std::size_t a, std::size_t b,
                                std::size_t c) const {
  return table_[(a * n_ + b) * n_ + c] != 0;
}

std::size_t CollinearTable::count_true() const {
  std::size_t k = 0;
  for (char x : table_) k += x;
  return k;
}

std::size_t compose(const FacePoset& poset, std::size_t c, std::size_t q) {
  const Face& fc = poset.face(c);
  const Face& fq = poset.face(q);
  SignVector s(fc.signs.size());
  for (std::size_t h = 0; h < s.size(); ++h)
    s[h] = fc.signs[h] != Sign::zero ? fc.signs[h] : fq.signs[h];

  // Epsilon-witness check: c + eps*q realizes the claimed signs for small
  // rational eps.
  const Arrangement& arr = poset.arrangement();
  Rat eps = 1;
  for (std::size_t h = 0; h < arr.normals.size(); ++h) {
    Rat vc = dot(arr.normals[h], fc.witness);
    if (vc == 0) continue;
    Rat vq = dot(arr.normals[h], fq.witness);
    Rat bound = abs(vc) / (abs(vq) + 1);
    if (bound < eps) eps = bound;
  }
  eps /= 2;
  Vec p(arr.dim);
  for (std::size_t j = 0; j < arr.dim; ++j)
    p[j] = fc.witness[j] + eps * fq.witness[j];
  if (signs_at(arr, p) != s) throw Error("compose: epsilon witness mismatch");
  return poset.index_of(s);
}

std::optional<std::size_t> opposes(const FacePoset& poset, std::size_t a,
                                   std::size_t b) {
  return poset.wall_between(a, b);
}

std::vector<std::size_t> codim2_cycle(const FacePoset& poset, std::size_t f) {
  if (poset.face(f).codim != 2)
    throw NotCodim2Error("codim2_cycle: face " + poset.face_name(f) +
                         " has codim " + std::to_string(poset.face(f).codim));
  std::vector<std::size_t> around;
  for (std::size_t c : poset.chambers())
    if (poset.leq(f, c)) around.push_back(c);

  auto neighbors = [&](std::size_t c) {
    std::vector<std::size_t> out;
    for (std::size_t d : around) {
      if (d == c) continue;
      auto w = poset.wall_between(c, d);
      if (w && poset.leq(f, *w)) out.push_back(d);
    }
    return out;
  };

  for (std::size_t c : around)
    if (neighbors(c).size() != 2) throw Error("codim2_cycle: not a 2-regular fan");

  std::size_t start = around.front();
  std::vector<std::size_t> cycle{start};
  std::size_t prev = start, cur = neighbors(start).front();
  while (cur != start) {
    cycle.push_back(cur);
    auto ns = neighbors(cur);
    std::size_t nxt = (ns[0] == prev) ? ns[1] : ns[0];
    prev = cur;
    cur = nxt;
  }
  if (cycle.size() != around.size() || cycle.size() % 2 != 0)
    throw Error("codim2_cycle: fan is not a single even cycle");
  return cycle;
}

Flat flat_from(const Arrangement& arr, std::vector<std::size_t> hyperplanes) {
  std::sort(hyperplanes.begin(), hyperplanes.end());
  hyperplanes.erase(std::unique(hyperplanes.begin(), hyperplanes.end()),
                    hyperplanes.end());
  for (std::size_t h : hyperplanes)
    if (h >= arr.normals.size()) throw InputError("hyperplane index out of range");
  if (hyperplanes.empty())
    return {std::move(hyperplanes), Subspace::full(arr.dim)};
  Matrix stacked(hyperplanes.size(), arr.dim);
  for (std::size_t i = 0; i < hyperplanes.size(); ++i)
    for (std::size_t j = 0; j < arr.dim; ++j)
      stacked(i, j) = arr.normals[hyperplanes[i]][j];
  return {std::move(hyperplanes), kernel_basis(stacked)};
}

std::vector<std::size_t> containing_hyperplanes(const Arrangement& arr,
                                                const Flat& flat) {
  std::vector<std::size_t> out;
  for (std::size_t h = 0; h < arr.normals.size(); ++h) {
    bool contains = true;
    for (const Vec& b : flat.space.basis())
      if (dot(arr.normals[h], b) != 0) contains = false;
    if (contains) out.push_back(h);
  }
  return out;
}

std::vector<std::size_t> faces_in_flat(const FacePoset& poset, const Flat& flat) {
  auto containing = containing_hyperplanes(poset.arrangement(), flat);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    bool inside = true;
    for (std::size_t h : containing)
      if (poset.face(i).signs[h] != Sign::zero) inside = false;
    if (inside) out.push_back(i);
  }
  return out;
}

Restriction flats_and_restriction(const FacePoset& poset, const Flat& flat) {
  const Arrangement& arr = poset.arrangement();
  Flat rebuilt = flat_from(arr, flat.hyperplanes);
  if (!(rebuilt.space == flat.space))
    throw NotAFlatError("flat basis does not match its hyperplane subset");

  Matrix basis = flat.space.basis_matrix();  // dim x d
  const std::size_t d = basis.cols();
  auto containing = containing_hyperplanes(arr, flat);

  // Restricted normals, deduplicated up to sign.
  Arrangement restricted;
  restricted.dim = d;
  std::vector<Vec> seen;
  for (std::size_t h = 0; h < arr.normals.size(); ++h) {
    if (std::find(containing.begin(), containing.end(), h) != containing.end())
      continue;
    Vec row(d, Rat(0));
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < arr.dim; ++i)
        row[j] += arr.normals[h][i] * basis(i, j);
    // Canonical orientation: first nonzero entry +1.
    Rat lead = 0;
    for (const Rat& x : row)
      if (x != 0) {
        lead = x;
        break;
      }
    if (lead == 0) throw Error("restricted normal vanished unexpectedly");
    for (Rat& x : row) x /= lead;
    if (std::find(seen.begin(), seen.end(), row) == seen.end()) {
      seen.push_back(row);
      restricted.normals.push_back(row);
    }
  }

  FacePoset poset_z = enumerate_faces(restricted);

  Restriction out{flat, basis, restricted, std::move(poset_z), {}, {}};
  for (std::size_t i = 0; i < out.poset_z.size(); ++i) {
    Vec p(arr.dim, Rat(0));
    const Vec& w = out.poset_z.face(i).witness;
    for (std::size_t r = 0; r < arr.dim; ++r)
      for (std::size_t j = 0; j < d; ++j) p[r] += basis(r, j) * w[j];
    std::size_t amb = poset.index_of(signs_at(arr, p));
    out.to_ambient.push_back(amb);
    out.from_ambient[amb] = i;
  }
  // The embedding must hit exactly the faces inside the flat.
  auto cz = faces_in_flat(poset, flat);
  if (out.from_ambient.size() != out.to_ambient.size() ||
      cz.size() != out.to_ambient.size())
    throw Error("restriction embedding is not a bijection onto C_Z");
  for (std::size_t amb : cz)
    if (!out.from_ambient.count(amb))
      throw Error("restriction embedding misses a face of C_Z");
  return out;
}

}  // namespace pervarr
