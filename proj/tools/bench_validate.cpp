// Benchmark: serial reference vs OpenMP parallel sweeps. The two hot loops
// are the collinearity table (one exact LP per mixed triple) and the R2
// relation sweep of the module validator. Both paths must produce identical
// results; this tool times them and checks agreement.

#include <chrono>
#include <iostream>

#include "pervarr/io.hpp"

#if defined(PERVARR_HAVE_OPENMP)
#include <omp.h>
#endif

using namespace pervarr;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Arrangement boolean_cube(std::size_t n) {
  Arrangement arr;
  arr.dim = n;
  for (std::size_t i = 0; i < n; ++i) {
    Vec f(n, Rat(0));
    f[i] = 1;
    arr.normals.push_back(f);
  }
  return arr;
}

// Tensor-product module of one-hyperplane extensions along each coordinate,
// built directly on the given poset: nontrivial idempotents of dim 2^n.
RModule tensor_extension_module(const Workbench& ctx, const Rat& q) {
  const FacePoset& poset = *ctx.poset;
  const std::size_t n = poset.arrangement().dim;
  Matrix plus(2, 2), minus(2, 2), id2 = Matrix::identity(2);
  plus(0, 0) = 1;
  plus(0, 1) = q;
  minus(1, 0) = 1;
  minus(1, 1) = 1;
  RModule m;
  m.ctx = ctx;
  m.dim = std::size_t(1) << n;
  for (std::size_t f = 0; f < poset.size(); ++f) {
    Matrix acc = Matrix::identity(1);
    for (std::size_t h = 0; h < n; ++h) {
      Sign s = poset.face(f).signs[h];
      acc = kronecker(acc, s == Sign::plus ? plus
                           : s == Sign::minus ? minus
                                              : id2);
    }
    m.act.push_back(std::move(acc));
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  Arrangement arr;
  if (argc > 1) {
    arr = arrangement_from_json(load_json_file(argv[1]));
    std::cout << "arrangement: " << argv[1] << "\n";
  } else {
    arr = boolean_cube(3);
    std::cout << "arrangement: boolean cube in dimension 3\n";
  }

#if defined(PERVARR_HAVE_OPENMP)
  std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "openmp: not available, parallel falls back to serial\n";
#endif

  auto t0 = Clock::now();
  FacePoset poset = enumerate_faces(arr);
  std::cout << "faces: " << poset.size() << "  (enumeration "
            << ms_since(t0) << " ms)\n";

  t0 = Clock::now();
  CollinearTable serial_table(poset, Exec::serial);
  double serial_ms = ms_since(t0);
  t0 = Clock::now();
  CollinearTable parallel_table(poset, Exec::parallel);
  double parallel_ms = ms_since(t0);
  std::cout << "collinear table: serial " << serial_ms << " ms, parallel "
            << parallel_ms << " ms, speedup " << serial_ms / parallel_ms
            << ", agree " << (serial_table == parallel_table ? "yes" : "NO")
            << ", collinear triples " << serial_table.count_true() << "\n";

  Workbench ctx;
  ctx.poset = std::make_shared<const FacePoset>(std::move(poset));
  ctx.collinear = std::make_shared<const CollinearTable>(serial_table);

  RModule m = tensor_extension_module(ctx, rat(2));
  t0 = Clock::now();
  ValidationReport rep_serial = validate_module(m, Exec::serial);
  serial_ms = ms_since(t0);
  RModule m2 = m;
  t0 = Clock::now();
  ValidationReport rep_parallel = validate_module(m2, Exec::parallel);
  parallel_ms = ms_since(t0);
  std::cout << "validate (dim " << m.dim << "): serial " << serial_ms
            << " ms, parallel " << parallel_ms << " ms, speedup "
            << serial_ms / parallel_ms << ", agree "
            << (rep_serial.violations == rep_parallel.violations ? "yes" : "NO")
            << ", valid " << (rep_serial.ok() ? "yes" : "no") << "\n";
  return 0;
}
