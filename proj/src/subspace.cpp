#include "pervarr/subspace.hpp"

#include <cstdint>

namespace pervarr {

namespace {

// Canonical basis = nonzero rows of the rref of the generator matrix.
std::vector<Vec> reduce_rows(std::size_t ambient, const std::vector<Vec>& gens) {
  if (gens.empty()) return {};
  Matrix g(gens.size(), ambient);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].size() != ambient) throw DimensionError("generator length");
    for (std::size_t j = 0; j < ambient; ++j) g(i, j) = gens[i][j];
  }
  auto [red, piv] = rref(g);
  std::vector<Vec> rows;
  rows.reserve(piv.size());
  for (std::size_t r = 0; r < piv.size(); ++r) rows.push_back(red.row(r));
  return rows;
}

}  // namespace

Subspace Subspace::span_of(std::size_t ambient_dim, const std::vector<Vec>& gens) {
  Subspace s(ambient_dim);
  s.basis_ = reduce_rows(ambient_dim, gens);
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    Vec e(ambient_dim, Rat(0));
    e[i] = 1;
    gens.push_back(e);
  }
  return span_of(ambient_dim, gens);
}

Matrix Subspace::basis_matrix() const {
  return Matrix::from_columns(ambient_, basis_);
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_) throw DimensionError("contains: vector length");
  // Reduce v against the echelon basis.
  Vec w = v;
  for (const Vec& b : basis_) {
    std::size_t lead = 0;
    while (lead < ambient_ && b[lead] == 0) ++lead;
    if (lead < ambient_ && w[lead] != 0) {
      Rat f = w[lead] / b[lead];
      for (std::size_t j = lead; j < ambient_; ++j) w[j] -= f * b[j];
    }
  }
  return is_zero_vec(w);
}

bool Subspace::contains(const Subspace& other) const {
  for (const Vec& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw DimensionError("sum: ambient mismatch");
  std::vector<Vec> gens = basis_;
  gens.insert(gens.end(), other.basis_.begin(), other.basis_.end());
  return span_of(ambient_, gens);
}

Matrix Subspace::annihilator_rows() const {
  // Rows spanning {f : f(v) = 0 for all v in this} = kernel of basis^T...
  // i.e. null space of the matrix whose rows are the basis vectors.
  Matrix rows(basis_.size(), ambient_);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) rows(i, j) = basis_[i][j];
  Subspace null = basis_.empty() ? Subspace::full(ambient_) : kernel_basis(rows);
  Matrix ann(null.dim(), ambient_);
  for (std::size_t i = 0; i < null.dim(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) ann(i, j) = null.basis()[i][j];
  return ann;
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (ambient_ != other.ambient_)
    throw DimensionError("intersect: ambient mismatch");
  Matrix a1 = annihilator_rows();
  Matrix a2 = other.annihilator_rows();
  Matrix stacked(a1.rows() + a2.rows(), ambient_);
  for (std::size_t i = 0; i < a1.rows(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) stacked(i, j) = a1(i, j);
  for (std::size_t i = 0; i < a2.rows(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) stacked(a1.rows() + i, j) = a2(i, j);
  if (stacked.rows() == 0) return full(ambient_);
  return kernel_basis(stacked);
}

Subspace Subspace::preimage_under(const Matrix& op) const {
  if (op.rows() != ambient_) throw DimensionError("preimage: op shape");
  Matrix ann = annihilator_rows();
  if (ann.rows() == 0) return full(op.cols());
  return kernel_basis(ann * op);
}

Subspace kernel_basis(const Matrix& m) {
  auto [red, piv] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : piv) is_pivot[p] = true;
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    Vec v(m.cols(), Rat(0));
    v[j] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -red(r, j);
    gens.push_back(v);
  }
  return Subspace::span_of(m.cols(), gens);
}

Subspace image_basis(const Matrix& m) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return Subspace::span_of(m.rows(), cols);
}

Subspace closure_under(const std::vector<Matrix>& ops, const Subspace& seed) {
  std::size_t n = seed.ambient_dim();
  for (const Matrix& op : ops)
    if (op.rows() != n || op.cols() != n)
      throw DimensionError("closure_under: op shape");
  Subspace cur = seed;
  for (;;) {
    std::vector<Vec> gens = cur.basis();
    for (const Matrix& op : ops)
      for (const Vec& b : cur.basis()) gens.push_back(op * b);
    Subspace next = Subspace::span_of(n, gens);
    if (next.dim() == cur.dim()) return cur;
    cur = next;
  }
}

bool invertible_in_span(const Subspace& mats, std::size_t d) {
  if (mats.ambient_dim() != d * d)
    throw DimensionError("invertible_in_span: ambient is not d*d");
  if (d == 0) return true;
  auto reshape = [&](const Vec& v) {
    Matrix x(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) x(i, j) = v[i * d + j];
    return x;
  };
  for (const Vec& v : mats.basis())
    if (is_invertible(reshape(v))) return true;
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next = [&state] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<long>(state % 7) - 3;
  };
  for (int attempt = 0; attempt < 200 && !mats.basis().empty(); ++attempt) {
    Vec comb(d * d, Rat(0));
    for (const Vec& v : mats.basis()) {
      long c = next();
      if (c == 0) continue;
      for (std::size_t i = 0; i < comb.size(); ++i) comb[i] += Rat(c) * v[i];
    }
    if (is_invertible(reshape(comb))) return true;
  }
  return false;
}

Subspace largest_invariant_in(const std::vector<Matrix>& ops,
                              const Matrix& constraint) {
  std::size_t n = constraint.cols();
  for (const Matrix& op : ops)
    if (op.rows() != n || op.cols() != n)
      throw DimensionError("largest_invariant_in: op shape");
  Subspace cur = kernel_basis(constraint);
  for (;;) {
    Subspace next = cur;
    for (const Matrix& op : ops) next = next.intersect(cur.preimage_under(op));
    if (next == cur) return cur;
    cur = next;
  }
}

}  // namespace pervarr
