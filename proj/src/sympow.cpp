#include "pervarr/sympow.hpp"

#include <map>

#include "pervarr/error.hpp"

namespace pervarr {

std::vector<std::vector<unsigned>> monomial_basis(std::size_t n_vars, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(n_vars, 0);
  // Recursive lex-descending enumeration of compositions of k.
  auto rec = [&](auto&& self, std::size_t pos, unsigned rem) -> void {
    if (pos + 1 == n_vars) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (unsigned e = rem + 1; e-- > 0;) {
      cur[pos] = e;
      self(self, pos + 1, rem - e);
    }
  };
  if (n_vars > 0) rec(rec, 0, k);
  return out;
}

Matrix sym_power(const Matrix& m, unsigned k) {
  if (!m.is_square()) throw DimensionError("sym_power: square input required");
  const std::size_t n = m.rows();
  auto mons = monomial_basis(n, k);
  std::map<std::vector<unsigned>, std::size_t> index;
  for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;

  using Poly = std::map<std::vector<unsigned>, Rat>;
  // Image of each variable as a degree-1 polynomial.
  std::vector<Poly> var_image(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) != 0) {
        std::vector<unsigned> e(n, 0);
        e[j] = 1;
        var_image[i][e] = m(i, j);
      }

  auto mul = [&](const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        std::vector<unsigned> e(n);
        for (std::size_t t = 0; t < n; ++t) e[t] = ea[t] + eb[t];
        r[e] += ca * cb;
      }
    return r;
  };

  Matrix out(mons.size(), mons.size());
  for (std::size_t i = 0; i < mons.size(); ++i) {
    Poly img;
    img[std::vector<unsigned>(n, 0)] = 1;
    for (std::size_t v = 0; v < n; ++v)
      for (unsigned e = 0; e < mons[i][v]; ++e) img = mul(img, var_image[v]);
    for (const auto& [e, c] : img)
      if (c != 0) out(i, index.at(e)) = c;
  }
  return out;
}

std::optional<unsigned> sym_separation(const std::vector<Matrix>& elems,
                                       const std::vector<Rat>& coeffs,
                                       unsigned k_max) {
  if (elems.size() != coeffs.size())
    throw DimensionError("sym_separation: list lengths differ");
  for (const Matrix& g : elems)
    if (!is_invertible(g)) throw SingularError("sym_separation: singular element");
  for (std::size_t i = 1; i < elems.size(); ++i)
    if (elems[i].rows() != elems[0].rows())
      throw DimensionError("sym_separation: size mismatch");
  for (unsigned k = 1; k <= k_max; ++k) {
    Matrix acc;
    bool first = true;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      Matrix term = sym_power(elems[i], k).scaled(coeffs[i]);
      acc = first ? term : acc + term;
      first = false;
    }
    if (!first && !acc.is_zero()) return k;
  }
  return std::nullopt;
}

}  // namespace pervarr
