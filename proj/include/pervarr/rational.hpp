#pragma once
#include <gmpxx.h>
#include <string>
#include <vector>

namespace pervarr {

// Exact scalar field. Everything downstream is written against this one
// alias, so swapping in another exact field means touching this header only.
using Rat = mpq_class;
using Vec = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p", "p/q" (canonicalized, denominator made positive).
Rat rat_of_string(const std::string& s);

/// Emits "p" when the denominator is 1, else "p/q".
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline int sign_of(const Rat& r) { return sgn(r); }

inline Rat dot(const Vec& a, const Vec& b) {
  Rat acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline bool is_zero_vec(const Vec& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace pervarr
