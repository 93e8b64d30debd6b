#include "pervarr/lp.hpp"

#include <algorithm>
#include <map>

#include "pervarr/error.hpp"

namespace pervarr {

namespace {

// Positive rescaling so duplicate rows collapse: divide by |first nonzero|.
void normalize_row(Vec& r) {
  for (const Rat& x : r) {
    if (x != 0) {
      Rat d = abs(x);
      for (Rat& y : r) y /= d;
      return;
    }
  }
}

void dedupe(std::vector<Vec>& rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

}  // namespace

std::optional<Vec> feasible_point(const StrictSystem& sys) {
  const std::size_t n = sys.dim;
  for (const Vec& r : sys.eqs)
    if (r.size() != n) throw DimensionError("feasible_point: eq row length");
  for (const Vec& r : sys.gts)
    if (r.size() != n) throw DimensionError("feasible_point: gt row length");

  // Phase 1: eliminate equalities by exact substitution. For each pivot we
  // remember x_p = sum_j expr[j] * x_j over the remaining variables.
  std::vector<Vec> eqs = sys.eqs;
  std::vector<Vec> gts = sys.gts;
  std::vector<std::pair<std::size_t, Vec>> substitutions;
  std::vector<bool> eliminated(n, false);

  for (std::size_t e = 0; e < eqs.size(); ++e) {
    Vec row = eqs[e];
    // Reduce against earlier substitutions.
    for (const auto& [p, expr] : substitutions) {
      if (row[p] == 0) continue;
      Rat c = row[p];
      row[p] = 0;
      for (std::size_t j = 0; j < n; ++j) row[j] += c * expr[j];
    }
    std::size_t piv = n;
    for (std::size_t j = n; j-- > 0;) {
      if (row[j] != 0) {
        piv = j;
        break;
      }
    }
    if (piv == n) continue;  // 0 = 0
    Vec expr(n, Rat(0));
    Rat c = row[piv];
    for (std::size_t j = 0; j < n; ++j)
      if (j != piv) expr[j] = -row[j] / c;
    substitutions.emplace_back(piv, expr);
    eliminated[piv] = true;
  }

  // Apply all substitutions to the strict rows.
  for (Vec& row : gts) {
    for (const auto& [p, expr] : substitutions) {
      if (row[p] == 0) continue;
      Rat c = row[p];
      row[p] = 0;
      for (std::size_t j = 0; j < n; ++j) row[j] += c * expr[j];
    }
    normalize_row(row);
    if (is_zero_vec(row)) return std::nullopt;  // 0 > 0
  }
  dedupe(gts);

  // Phase 2: Fourier-Motzkin on the free variables, highest index first.
  std::vector<std::size_t> order;
  for (std::size_t j = n; j-- > 0;)
    if (!eliminated[j]) order.push_back(j);

  // Per eliminated variable, the rows that mentioned it (for reconstruction).
  std::vector<std::pair<std::size_t, std::vector<Vec>>> steps;

  for (std::size_t k : order) {
    std::vector<Vec> with_k, without_k;
    for (const Vec& row : gts)
      (row[k] != 0 ? with_k : without_k).push_back(row);
    std::vector<Vec> pos, neg;
    for (const Vec& row : with_k) (row[k] > 0 ? pos : neg).push_back(row);
    for (const Vec& p : pos)
      for (const Vec& m : neg) {
        Vec comb(n, Rat(0));
        Rat a = -m[k], b = p[k];  // a,b > 0
        for (std::size_t j = 0; j < n; ++j) comb[j] = a * p[j] + b * m[j];
        normalize_row(comb);
        if (is_zero_vec(comb)) return std::nullopt;
        without_k.push_back(comb);
      }
    dedupe(without_k);
    steps.emplace_back(k, std::move(with_k));
    gts = std::move(without_k);
  }
  // Whatever survives has no variables left; all-zero rows were rejected
  // along the way, so the system is feasible.

  // Phase 3: reconstruct a witness, last-eliminated variable first.
  Vec x(n, Rat(0));
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const auto& [k, rows] = *it;
    bool has_lo = false, has_hi = false;
    Rat lo = 0, hi = 0;
    for (const Vec& row : rows) {
      // row . x > 0 with only x_k unknown: row[k]*x_k > -rest
      Rat rest = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) rest += row[j] * x[j];
      Rat bound = -rest / row[k];
      if (row[k] > 0) {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      } else {
        if (!has_hi || bound < hi) hi = bound;
        has_hi = true;
      }
    }
    if (has_lo && has_hi)
      x[k] = (lo + hi) / 2;
    else if (has_lo)
      x[k] = lo + 1;
    else if (has_hi)
      x[k] = hi - 1;
    else
      x[k] = 0;
  }

  // Phase 4: back out the equality substitutions (reverse order).
  for (auto it = substitutions.rbegin(); it != substitutions.rend(); ++it) {
    const auto& [p, expr] = *it;
    Rat v = 0;
    for (std::size_t j = 0; j < n; ++j) v += expr[j] * x[j];
    x[p] = v;
  }
  return x;
}

}  // namespace pervarr
