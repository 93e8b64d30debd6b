#include "pervarr/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "pervarr/error.hpp"

namespace pervarr {

namespace {

constexpr std::size_t kGroupCap = 10000;

std::string matrix_key(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << rat_to_string(m(i, j)) << ";";
  return os.str();
}

}  // namespace

std::shared_ptr<const CoxeterSystem> CoxeterSystem::build(
    const std::vector<std::vector<unsigned>>& coxeter_matrix) {
  auto sys = std::shared_ptr<CoxeterSystem>(new CoxeterSystem());
  const std::size_t n = coxeter_matrix.size();
  if (n == 0) throw InputError("empty Coxeter matrix");
  for (const auto& row : coxeter_matrix)
    if (row.size() != n) throw InputError("Coxeter matrix not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (coxeter_matrix[i][i] != 1)
      throw InputError("Coxeter matrix diagonal must be 1");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coxeter_matrix[i][j] != coxeter_matrix[j][i])
        throw InputError("Coxeter matrix not symmetric");
      unsigned m = coxeter_matrix[i][j];
      if (m != 2 && m != 3 && m != 4 && m != 6)
        throw NotCrystallographicError(
            "off-diagonal orders must be 2, 3, 4 or 6");
    }
  }
  sys->rank_ = n;
  sys->cox_ = coxeter_matrix;

  // Integer Cartan realization: orders 4 and 6 get the asymmetric pairs
  // (-1,-2) and (-1,-3).
  sys->cartan_ = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) sys->cartan_(i, i) = 2;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      switch (sys->cox_[i][j]) {
        case 2: sys->cartan_(i, j) = 0; break;
        case 3: sys->cartan_(i, j) = -1; break;
        case 4: sys->cartan_(i, j) = (i < j) ? -1 : -2; break;
        case 6: sys->cartan_(i, j) = (i < j) ? -1 : -3; break;
      }
    }

  for (std::size_t i = 0; i < n; ++i) {
    Matrix g = Matrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) g(i, j) -= sys->cartan_(i, j);
    sys->gen_.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(sys->gen_[i] * sys->gen_[i]).is_identity())
      throw Error("reflection representation: s^2 != 1");
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix p = sys->gen_[i] * sys->gen_[j];
      Matrix acc = Matrix::identity(n);
      for (unsigned k = 0; k < sys->cox_[i][j]; ++k) acc = acc * p;
      if (!acc.is_identity())
        throw Error("reflection representation: (st)^m != 1");
    }
  }

  // Enumerate the group by breadth-first search; depth equals Coxeter length.
  sys->elem_.push_back(Matrix::identity(n));
  sys->length_.push_back(0);
  sys->word_.push_back({});
  sys->index_[matrix_key(sys->elem_[0])] = 0;
  sys->identity_ = 0;
  for (std::size_t qi = 0; qi < sys->elem_.size(); ++qi) {
    for (std::size_t s = 0; s < n; ++s) {
      Matrix w = sys->gen_[s] * sys->elem_[qi];
      std::string key = matrix_key(w);
      if (sys->index_.count(key)) continue;
      if (sys->elem_.size() >= kGroupCap)
        throw NotFiniteTypeError("group enumeration exceeded cap");
      sys->index_[key] = sys->elem_.size();
      sys->elem_.push_back(std::move(w));
      sys->length_.push_back(sys->length_[qi] + 1);
      std::vector<unsigned> word = sys->word_[qi];
      word.insert(word.begin(), static_cast<unsigned>(s));
      sys->word_.push_back(std::move(word));
    }
  }

  // Reflection arrangement: one hyperplane per reflection, oriented positive
  // at a fundamental point.
  Matrix ones(n, 1);
  for (std::size_t i = 0; i < n; ++i) ones(i, 0) = 1;
  Matrix p = solve(sys->cartan_, ones);
  sys->fundamental_point_ = p.column(0);

  Arrangement arr;
  arr.dim = n;
  for (std::size_t w = 0; w < sys->elem_.size(); ++w) {
    Matrix diff = sys->elem_[w] - Matrix::identity(n);
    if (pervarr::rank(diff) != 1) continue;
    Vec row;
    for (std::size_t i = 0; i < n; ++i) {
      row = diff.row(i);
      if (!is_zero_vec(row)) break;
    }
    // Primitive integer representative, positive at the fundamental point.
    mpz_class den = 1;
    for (const Rat& x : row) den = den * x.get_den() / gcd(den, x.get_den());
    mpz_class num = 0;
    for (Rat& x : row) {
      x *= den;
      num = gcd(num, x.get_num());
    }
    if (num != 0)
      for (Rat& x : row) x /= Rat(num);
    Rat at_p = dot(row, sys->fundamental_point_);
    if (at_p == 0) throw Error("fundamental point lies on a wall");
    if (at_p < 0)
      for (Rat& x : row) x = -x;
    if (std::find(arr.normals.begin(), arr.normals.end(), row) ==
        arr.normals.end())
      arr.normals.push_back(std::move(row));
  }
  sys->poset_ =
      std::make_shared<const FacePoset>(enumerate_faces(arr));
  sys->fundamental_chamber_ =
      sys->poset_->index_of(signs_at(arr, sys->fundamental_point_));

  // Lambda poset: C_I has a witness with f_i = 0 exactly on I.
  sys->lambda_face_.assign(std::size_t(1) << n, 0);
  std::size_t cplus = 0;
  for (std::size_t c = 0; c < sys->poset_->size(); ++c)
    if (sys->poset_->leq(c, sys->fundamental_chamber_)) ++cplus;
  if (cplus != sys->lambda_face_.size())
    throw Error("closed chamber face count differs from 2^rank");
  for (unsigned mask = 0; mask < sys->lambda_face_.size(); ++mask) {
    Matrix chi(n, 1);
    for (std::size_t i = 0; i < n; ++i)
      chi(i, 0) = (mask >> i) & 1u ? 0 : 1;
    Vec x = solve(sys->cartan_, chi).column(0);
    for (std::size_t i = 0; i < n; ++i) {
      bool fixes = sys->gen_[i] * x == x;
      if (fixes != bool((mask >> i) & 1u))
        throw Error("lambda witness has the wrong stabilizer");
    }
    std::size_t face = sys->poset_->index_of(signs_at(arr, x));
    if (!sys->poset_->leq(face, sys->fundamental_chamber_))
      throw Error("lambda face escapes the closed fundamental chamber");
    sys->lambda_face_[mask] = face;
  }

  return sys;
}

std::shared_ptr<const CoxeterSystem> CoxeterSystem::build_type(
    const std::string& type, unsigned rank) {
  if (rank == 0) throw InputError("rank must be positive");
  std::vector<std::vector<unsigned>> cox(rank, std::vector<unsigned>(rank, 2));
  for (unsigned i = 0; i < rank; ++i) cox[i][i] = 1;
  if (type == "A") {
    for (unsigned i = 0; i + 1 < rank; ++i) cox[i][i + 1] = cox[i + 1][i] = 3;
  } else if (type == "B" || type == "C") {
    if (rank < 2) throw InputError("type B needs rank >= 2");
    for (unsigned i = 0; i + 1 < rank; ++i) cox[i][i + 1] = cox[i + 1][i] = 3;
    cox[rank - 2][rank - 1] = cox[rank - 1][rank - 2] = 4;
  } else if (type == "G") {
    if (rank != 2) throw InputError("type G needs rank 2");
    cox[0][1] = cox[1][0] = 6;
  } else if (type == "D") {
    if (rank < 4) throw InputError("type D needs rank >= 4");
    for (unsigned i = 0; i + 2 < rank; ++i) cox[i][i + 1] = cox[i + 1][i] = 3;
    cox[rank - 3][rank - 1] = cox[rank - 1][rank - 3] = 3;
  } else {
    throw NotCrystallographicError("unsupported type " + type);
  }
  return build(cox);
}

std::size_t CoxeterSystem::index_of(const Matrix& m) const {
  auto it = index_.find(matrix_key(m));
  if (it == index_.end()) throw Error("matrix is not a group element");
  return it->second;
}

std::size_t CoxeterSystem::mult(std::size_t a, std::size_t b) const {
  return index_of(elem_[a] * elem_[b]);
}

std::size_t CoxeterSystem::inv(std::size_t a) const {
  return index_of(inverse(elem_[a]));
}

const std::vector<std::size_t>& CoxeterSystem::parabolic(unsigned mask) const {
  auto it = parabolic_.find(mask);
  if (it != parabolic_.end()) return it->second;
  std::vector<std::size_t> members{identity_};
  for (std::size_t qi = 0; qi < members.size(); ++qi)
    for (std::size_t s = 0; s < rank_; ++s) {
      if (!((mask >> s) & 1u)) continue;
      std::size_t w = index_of(gen_[s] * elem_[members[qi]]);
      if (std::find(members.begin(), members.end(), w) == members.end())
        members.push_back(w);
    }
  std::sort(members.begin(), members.end());
  return parabolic_.emplace(mask, std::move(members)).first->second;
}

std::size_t CoxeterSystem::longest_element(unsigned mask) const {
  const auto& members = parabolic(mask);
  std::size_t best = identity_;
  for (std::size_t w : members)
    if (length_[w] > length_[best]) best = w;
  for (std::size_t w : members)
    if (w != best && length_[w] == length_[best])
      throw Error("longest parabolic element not unique");
  return best;
}

std::size_t CoxeterSystem::face_action(std::size_t w, std::size_t face) const {
  Vec p = elem_[w] * poset_->face(face).witness;
  return poset_->index_of(signs_at(poset_->arrangement(), p));
}

const Workbench& CoxeterSystem::plain_workbench() const {
  if (!workbench_) {
    auto wb = std::make_shared<Workbench>();
    wb->poset = poset_;
    wb->collinear = std::make_shared<const CollinearTable>(*poset_);
    workbench_ = wb;
  }
  return *workbench_;
}

bool lambda_leq(const CoxeterSystem& sys, unsigned mask_i, unsigned mask_j) {
  return sys.poset().leq(sys.lambda_face(mask_i), sys.lambda_face(mask_j));
}

bool opposes_lambda(const CoxeterSystem& sys, unsigned mask_i, unsigned mask_j,
                    std::size_t w) {
  if (std::popcount(mask_i) != std::popcount(mask_j)) return false;
  unsigned full = (1u << sys.rank()) - 1;
  for (unsigned k = 0; k <= full; ++k) {
    if (std::popcount(k) != std::popcount(mask_i) + 1) continue;
    if ((mask_i | mask_j) & ~k) continue;
    const auto& wk = sys.parabolic(k);
    if (!std::binary_search(wk.begin(), wk.end(), w)) continue;
    // wJw^{-1} = I as sets of reflections.
    bool conj_ok = true;
    unsigned seen = 0;
    for (std::size_t t = 0; t < sys.rank(); ++t) {
      if (!((mask_j >> t) & 1u)) continue;
      Matrix conj = sys.element(w) * sys.generator(t) *
                    inverse(sys.element(w));
      bool found = false;
      for (std::size_t i = 0; i < sys.rank(); ++i)
        if (((mask_i >> i) & 1u) && conj == sys.generator(i)) {
          found = true;
          seen |= 1u << i;
        }
      if (!found) conj_ok = false;
    }
    if (!conj_ok || seen != mask_i) continue;
    // Geometric opposition through C_K.
    std::size_t c1 = sys.lambda_face(mask_i);
    std::size_t c2 = sys.face_action(w, sys.lambda_face(mask_j));
    auto wall = sys.poset().wall_between(c1, c2);
    if (wall && *wall == sys.lambda_face(k)) return true;
  }
  return false;
}

std::vector<std::tuple<unsigned, unsigned, std::size_t>>
opposing_lambda_instances(const CoxeterSystem& sys) {
  std::vector<std::tuple<unsigned, unsigned, std::size_t>> out;
  unsigned full = (1u << sys.rank()) - 1;
  for (unsigned i = 0; i <= full; ++i)
    for (unsigned j = 0; j <= full; ++j)
      for (std::size_t w = 0; w < sys.order(); ++w)
        if (opposes_lambda(sys, i, j, w)) out.emplace_back(i, j, w);
  return out;
}

const Matrix& RWModule::rho(std::size_t w) const {
  if (elem_act.empty())
    throw InvalidModuleError("rho: module not validated");
  return elem_act[w];
}

void RWModule::require_validated(const char* who) const {
  if (!validated)
    throw InvalidModuleError(std::string(who) + ": module not validated");
}

namespace {

std::string mask_name(const CoxeterSystem& sys, unsigned mask) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < sys.rank(); ++i)
    if ((mask >> i) & 1u) {
      if (!first) s += ",";
      s += "s" + std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

}  // namespace

ValidationReport validate_rw_module(RWModule& m, Exec exec) {
  ValidationReport rep;
  const CoxeterSystem& sys = *m.sys;
  const std::size_t n = sys.rank();
  const unsigned full = (1u << n) - 1;
  m.validated = false;
  m.loc_inv.clear();
  m.elem_act.clear();

  if (m.e.size() != std::size_t(full) + 1 || m.s.size() != n) {
    rep.violations.push_back("shape: wrong number of generator matrices");
    return rep;
  }
  for (const Matrix& x : m.e)
    if (x.rows() != m.dim || x.cols() != m.dim) {
      rep.violations.push_back("shape: e matrix size");
      return rep;
    }
  for (const Matrix& x : m.s)
    if (x.rows() != m.dim || x.cols() != m.dim) {
      rep.violations.push_back("shape: s matrix size");
      return rep;
    }

  // (3) and (4) first: the group action is only well-defined once they hold.
  bool group_ok = true;
  for (std::size_t i = 0; i < n; ++i)
    if (!(m.s[i] * m.s[i]).is_identity()) {
      rep.violations.push_back("relation (3) violated: s" +
                               std::to_string(i + 1) + "^2 != 1");
      group_ok = false;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix p = m.s[i] * m.s[j];
      Matrix acc = Matrix::identity(m.dim);
      for (unsigned k = 0; k < sys.coxeter_entry(i, j); ++k) acc = acc * p;
      if (!acc.is_identity()) {
        rep.violations.push_back("relation (4) violated: (s" +
                                 std::to_string(i + 1) + " s" +
                                 std::to_string(j + 1) + ")^m != 1");
        group_ok = false;
      }
    }

  for (unsigned i = 0; i <= full; ++i)
    for (unsigned j = 0; j <= full; ++j) {
      if (!(m.e[i] * m.e[j] == m.e[i & j]) || !(m.e[j] * m.e[i] == m.e[i & j]))
        rep.violations.push_back("relation (1) violated at (" +
                                 mask_name(sys, i) + "," + mask_name(sys, j) +
                                 ")");
    }

  for (unsigned i = 0; i <= full; ++i)
    for (std::size_t t = 0; t < n; ++t)
      if (((i >> t) & 1u) && !(m.s[t] * m.e[i] == m.e[i] * m.s[t]))
        rep.violations.push_back("relation (2) violated at (s" +
                                 std::to_string(t + 1) + "," +
                                 mask_name(sys, i) + ")");

  if (!group_ok) return rep;  // cannot evaluate group elements below

  // Group action along BFS words (well-defined given (3) and (4)).
  m.elem_act.resize(sys.order());
  for (std::size_t w = 0; w < sys.order(); ++w) {
    Matrix acc = Matrix::identity(m.dim);
    for (unsigned letter : sys.word(w)) acc = acc * m.s[letter];
    m.elem_act[w] = std::move(acc);
  }

  // Relation (5): enumerate (I, A, B, w, w1) with S = I + J, A in I, B in J,
  // w = w2 w1 in W_I and the length-additivity condition.
  struct Instance {
    unsigned split, a, b;
    std::size_t w, w1;
  };
  std::vector<Instance> instances;
  for (unsigned split = 0; split <= full; ++split) {
    unsigned j_mask = full & ~split;
    const auto& wi = sys.parabolic(split);
    for (unsigned a = split;; a = (a - 1) & split) {
      for (unsigned b = j_mask;; b = (b - 1) & j_mask) {
        std::size_t wa = sys.longest_element(a);
        std::size_t wb = sys.longest_element(b);
        for (std::size_t w : wi)
          for (std::size_t w1 : wi) {
            std::size_t w2 = sys.mult(w, sys.inv(w1));
            // lhs of the length condition: l(w wB wA)
            unsigned lhs = sys.length(sys.mult(sys.mult(w, wb), wa));
            unsigned rhs = sys.length(sys.mult(sys.mult(w, wb), sys.inv(w))) +
                           sys.length(w2) + sys.length(w1) + sys.length(wa);
            if (lhs == rhs) instances.push_back({split, a, b, w, w1});
          }
        if (b == 0) break;
      }
      if (a == 0) break;
    }
  }

  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(instances.size());
  std::vector<char> bad(total, 0);
  auto check5 = [&](std::ptrdiff_t idx) {
    const Instance& t = instances[idx];
    unsigned j_mask = full & ~t.split;
    std::size_t w2 = sys.mult(t.w, sys.inv(t.w1));
    Matrix lhs = m.e[t.a | j_mask] * m.elem_act[t.w1] * m.e[j_mask] *
                 m.elem_act[w2] * m.e[t.b | j_mask];
    Matrix rhs = m.e[t.a | j_mask] * m.elem_act[t.w] * m.e[t.b | j_mask];
    if (!(lhs == rhs)) bad[idx] = 1;
  };
#if defined(PERVARR_HAVE_OPENMP)
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) check5(idx);
  } else
#else
  (void)exec;
#endif
  {
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) check5(idx);
  }
  for (std::ptrdiff_t idx = 0; idx < total; ++idx)
    if (bad[idx]) {
      const Instance& t = instances[idx];
      rep.violations.push_back(
          "relation (5) violated at split I=" + mask_name(sys, t.split) +
          " A=" + mask_name(sys, t.a) + " B=" + mask_name(sys, t.b) +
          " w=" + std::to_string(t.w) + " w1=" + std::to_string(t.w1));
    }

  for (const auto& [i, j, w] : opposing_lambda_instances(sys)) {
    Matrix x = m.e[i] * m.elem_act[sys.inv(w)] * m.e[j] * m.elem_act[w] *
                   m.e[i] +
               (Matrix::identity(m.dim) - m.e[i]);
    try {
      m.loc_inv[{i, j, w}] = inverse(x);
    } catch (const SingularError&) {
      rep.violations.push_back("localization not invertible at (" +
                               mask_name(sys, i) + "," + mask_name(sys, j) +
                               ",w=" + std::to_string(w) + ")");
    }
  }

  if (rep.ok()) m.validated = true;
  return rep;
}

RWModule rw_trivial_module(std::shared_ptr<const CoxeterSystem> sys,
                           std::size_t d) {
  RWModule m;
  m.sys = std::move(sys);
  m.dim = d;
  m.e.assign(std::size_t(1) << m.sys->rank(), Matrix::identity(d));
  m.s.assign(m.sys->rank(), Matrix::identity(d));
  ValidationReport rep = validate_rw_module(m);
  if (!rep.ok()) throw ValidationFailedError("rw_trivial_module:\n" + rep.to_string());
  return m;
}

RWModule rw_sign_module(std::shared_ptr<const CoxeterSystem> sys) {
  RWModule m;
  m.sys = std::move(sys);
  m.dim = 1;
  m.e.assign(std::size_t(1) << m.sys->rank(), Matrix::identity(1));
  Matrix minus(1, 1);
  minus(0, 0) = -1;
  m.s.assign(m.sys->rank(), minus);
  ValidationReport rep = validate_rw_module(m);
  if (!rep.ok()) throw ValidationFailedError("rw_sign_module:\n" + rep.to_string());
  return m;
}

RWModule rw_direct_sum(const RWModule& a, const RWModule& b) {
  if (a.sys != b.sys) throw InputError("rw_direct_sum: different systems");
  RWModule m;
  m.sys = a.sys;
  m.dim = a.dim + b.dim;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    m.e.push_back(block_diag(a.e[i], b.e[i]));
  for (std::size_t i = 0; i < a.s.size(); ++i)
    m.s.push_back(block_diag(a.s[i], b.s[i]));
  ValidationReport rep = validate_rw_module(m);
  if (!rep.ok()) throw ValidationFailedError("rw_direct_sum:\n" + rep.to_string());
  return m;
}

BraidRep braid_restrict(const RWModule& m) {
  m.require_validated("braid_restrict");
  const CoxeterSystem& sys = *m.sys;
  BraidRep rep;
  rep.space_basis = image_basis(m.e[0]).basis_matrix();
  for (std::size_t t = 0; t < sys.rank(); ++t) {
    Matrix amb = m.e[0] * m.s[t] * m.e[0] * rep.space_basis;
    rep.sigma.push_back(solve(rep.space_basis, amb));
  }
  // Braid relations: alternating products of length m_{s,t} agree.
  for (std::size_t i = 0; i < sys.rank(); ++i)
    for (std::size_t j = i + 1; j < sys.rank(); ++j) {
      unsigned mm = sys.coxeter_entry(i, j);
      Matrix lhs = Matrix::identity(rep.dim()), rhs = lhs;
      for (unsigned k = 0; k < mm; ++k) {
        lhs = lhs * (k % 2 == 0 ? rep.sigma[i] : rep.sigma[j]);
        rhs = rhs * (k % 2 == 0 ? rep.sigma[j] : rep.sigma[i]);
      }
      if (!(lhs == rhs))
        throw Error("braid relation fails on the restriction");
    }
  return rep;
}

bool braid_reps_isomorphic(const BraidRep& a, const BraidRep& b) {
  if (a.dim() != b.dim() || a.sigma.size() != b.sigma.size()) return false;
  const std::size_t d = a.dim();
  if (d == 0) return true;
  Matrix sys_m(a.sigma.size() * d * d, d * d);
  std::size_t row = 0;
  for (std::size_t g = 0; g < a.sigma.size(); ++g)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
          sys_m(row, i * d + k) += a.sigma[g](k, j);
          sys_m(row, k * d + j) -= b.sigma[g](i, k);
        }
        ++row;
      }
  Subspace sols = kernel_basis(sys_m);
  return invertible_in_span(sols, d);
}

std::vector<Matrix> rw_operator_set(const RWModule& m) {
  m.require_validated("rw_operator_set");
  std::vector<Matrix> ops = m.e;
  ops.insert(ops.end(), m.s.begin(), m.s.end());
  for (const auto& [key, inv] : m.loc_inv) ops.push_back(inv);
  return ops;
}

Subspace rw_t_submodule(const RWModule& m, unsigned mask) {
  return closure_under(rw_operator_set(m), image_basis(m.e[mask]));
}

Subspace rw_n_submodule(const RWModule& m, unsigned mask) {
  return largest_invariant_in(rw_operator_set(m), m.e[mask]);
}

namespace {

RWModule rw_finish(RWModule m, const char* who) {
  ValidationReport rep = validate_rw_module(m);
  if (!rep.ok())
    throw ValidationFailedError(std::string(who) + ":\n" + rep.to_string());
  return m;
}

}  // namespace

RWModule rw_submodule(const RWModule& m, const Subspace& sub) {
  m.require_validated("rw_submodule");
  auto ops = rw_operator_set(m);
  for (const Matrix& op : ops)
    for (const Vec& b : sub.basis())
      if (!sub.contains(op * b))
        throw Error("rw_submodule: subspace not invariant");
  Matrix basis = sub.basis_matrix();
  RWModule out;
  out.sys = m.sys;
  out.dim = sub.dim();
  for (const Matrix& x : m.e) out.e.push_back(solve(basis, x * basis));
  for (const Matrix& x : m.s) out.s.push_back(solve(basis, x * basis));
  return rw_finish(std::move(out), "rw_submodule");
}

RWModule rw_quotient(const RWModule& m, const Subspace& sub) {
  m.require_validated("rw_quotient");
  for (const Matrix& op : rw_operator_set(m))
    for (const Vec& b : sub.basis())
      if (!sub.contains(op * b))
        throw Error("rw_quotient: subspace not invariant");
  const std::size_t n = m.dim, k = sub.dim();
  std::vector<std::size_t> comp;
  Subspace cur = sub;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, Rat(0));
    e[i] = 1;
    if (!cur.contains(e)) {
      comp.push_back(i);
      cur = cur.sum(Subspace::span_of(n, {e}));
    }
  }
  Matrix fullb(n, n);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) fullb(i, j) = sub.basis()[j][i];
  for (std::size_t j = 0; j < comp.size(); ++j) fullb(comp[j], k + j) = 1;
  Matrix full_inv = inverse(fullb);
  auto induce = [&](const Matrix& op) {
    Matrix img(n, comp.size());
    for (std::size_t j = 0; j < comp.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) img(i, j) = op(i, comp[j]);
    Matrix coords = full_inv * img;
    Matrix red(comp.size(), comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t j = 0; j < comp.size(); ++j) red(i, j) = coords(k + i, j);
    return red;
  };
  RWModule out;
  out.sys = m.sys;
  out.dim = comp.size();
  for (const Matrix& x : m.e) out.e.push_back(induce(x));
  for (const Matrix& x : m.s) out.s.push_back(induce(x));
  return rw_finish(std::move(out), "rw_quotient");
}

RWModule rw_i_upper_star(const RWModule& m, unsigned mask) {
  return rw_quotient(m, rw_t_submodule(m, mask));
}

RWModule rw_i_upper_shriek(const RWModule& m, unsigned mask) {
  return rw_submodule(m, rw_n_submodule(m, mask));
}

RWModule rw_intermediate_extension(const RWModule& seed) {
  seed.require_validated("rw_intermediate_extension");
  Subspace big = rw_t_submodule(seed, 0);
  RWModule on_big = rw_submodule(seed, big);
  Subspace small = rw_n_submodule(on_big, 0);
  RWModule p = rw_quotient(on_big, small);

  if (rw_t_submodule(p, 0).dim() != p.dim)
    throw Error("rw intermediate extension: i_upper_star(P) != 0");
  if (rw_n_submodule(p, 0).dim() != 0)
    throw Error("rw intermediate extension: i_upper_shriek(P) != 0");

  BraidRep before = braid_restrict(seed);
  BraidRep after = braid_restrict(p);
  if (before.dim() != after.dim() || !braid_reps_isomorphic(before, after))
    throw Error("rw intermediate extension: braid restriction not preserved");
  return p;
}

std::vector<unsigned> rw_support(const RWModule& m) {
  m.require_validated("rw_support");
  std::vector<unsigned> out;
  for (unsigned i = 0; i < m.e.size(); ++i)
    if (!m.e[i].is_zero()) out.push_back(i);
  return out;
}

std::vector<unsigned> lambda_of_flat(const CoxeterSystem& sys, const Flat& flat) {
  auto inside = faces_in_flat(sys.poset(), flat);
  std::vector<unsigned> out;
  for (unsigned mask = 0; mask < sys.n_subsets(); ++mask)
    if (std::find(inside.begin(), inside.end(), sys.lambda_face(mask)) !=
        inside.end())
      out.push_back(mask);
  return out;
}

bool rw_annihilated_outside(const RWModule& m,
                            const std::vector<unsigned>& lambda_z) {
  m.require_validated("rw_annihilated_outside");
  for (unsigned i = 0; i < m.e.size(); ++i) {
    bool in_z =
        std::find(lambda_z.begin(), lambda_z.end(), i) != lambda_z.end();
    if (!in_z && !m.e[i].is_zero()) return false;
  }
  return true;
}

RModule to_plain_module(const RWModule& m) {
  m.require_validated("to_plain_module");
  const CoxeterSystem& sys = *m.sys;
  const Workbench& ctx = sys.plain_workbench();
  const FacePoset& poset = sys.poset();

  RModule out;
  out.ctx = ctx;
  out.dim = m.dim;
  out.act.assign(poset.size(), Matrix());
  std::vector<char> assigned(poset.size(), 0);
  for (unsigned mask = 0; mask < sys.n_subsets(); ++mask) {
    std::size_t ci = sys.lambda_face(mask);
    for (std::size_t w = 0; w < sys.order(); ++w) {
      std::size_t face = sys.face_action(w, ci);
      Matrix cand = m.rho(w) * m.e[mask] * inverse(m.rho(w));
      if (assigned[face]) {
        if (!(out.act[face] == cand))
          throw IllDefinedActionError(
              "to_plain_module: stabilizer-dependent action at face " +
              poset.face_name(face));
      } else {
        out.act[face] = std::move(cand);
        assigned[face] = 1;
      }
    }
  }
  for (std::size_t f = 0; f < poset.size(); ++f)
    if (!assigned[f])
      throw Error("to_plain_module: face missed by the group action");
  ValidationReport rep = validate_module(out);
  if (!rep.ok())
    throw ValidationFailedError("to_plain_module:\n" + rep.to_string());
  return out;
}

}  // namespace pervarr
