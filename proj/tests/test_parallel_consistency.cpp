// The sweep kernels ship in two flavours: a serial reference and an OpenMP
// path. Everything here checks that both produce identical results.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pervarr/coxeter.hpp"
#include "test_util.hpp"

using namespace pervarr;
using namespace pervarr::testutil;

TEST_CASE("collinearity tables agree") {
  for (const Arrangement& arr : {one_line(), boolean2(), braid_a2()}) {
    FacePoset poset = enumerate_faces(arr);
    CollinearTable serial(poset, Exec::serial);
    CollinearTable parallel(poset, Exec::parallel);
    CHECK(serial == parallel);
    CHECK(serial.count_true() == parallel.count_true());
  }
}

TEST_CASE("module validation reports agree on valid and invalid modules") {
  RModule good = constant_module(braid_a2_ctx(), 2);
  RModule good2 = good;
  ValidationReport s = validate_module(good, Exec::serial);
  ValidationReport p = validate_module(good2, Exec::parallel);
  CHECK(s.violations == p.violations);
  CHECK(s.ok());

  RModule bad = constant_module(braid_a2_ctx(), 1);
  bad.act[face(bad.poset(), "+++")] = Matrix(1, 1);
  bad.act[face(bad.poset(), "-+-")] = Matrix(1, 1);
  RModule bad2 = bad;
  ValidationReport bs = validate_module(bad, Exec::serial);
  ValidationReport bp = validate_module(bad2, Exec::parallel);
  CHECK_FALSE(bs.ok());
  CHECK(bs.violations == bp.violations);
}

TEST_CASE("equivariant validation reports agree") {
  auto a2 = CoxeterSystem::build_type("A", 2);
  RWModule good = rw_trivial_module(a2, 2);
  RWModule good2 = good;
  ValidationReport s = validate_rw_module(good, Exec::serial);
  ValidationReport p = validate_rw_module(good2, Exec::parallel);
  CHECK(s.ok());
  CHECK(s.violations == p.violations);

  RWModule bad;
  bad.sys = a2;
  bad.dim = 2;
  bad.e.assign(4, Matrix::identity(2));
  Matrix s1(2, 2), s2(2, 2);
  s1(0, 1) = 1;
  s1(1, 0) = 1;
  s2(0, 0) = 1;
  s2(1, 1) = -1;
  bad.s = {s1, s2};
  RWModule bad2 = bad;
  ValidationReport bs = validate_rw_module(bad, Exec::serial);
  ValidationReport bp = validate_rw_module(bad2, Exec::parallel);
  CHECK_FALSE(bs.ok());
  CHECK(bs.violations == bp.violations);
}

TEST_CASE("relation-5 sweeps agree on a module with a violation") {
  // Relations (1)-(4) hold but (5) fails: take the standard reflection
  // representation with identity idempotents.
  auto a2 = CoxeterSystem::build_type("A", 2);
  RWModule m;
  m.sys = a2;
  m.dim = 2;
  m.e.assign(4, Matrix::identity(2));
  m.s = {a2->generator(0), a2->generator(1)};
  RWModule m2 = m;
  ValidationReport s = validate_rw_module(m, Exec::serial);
  ValidationReport p = validate_rw_module(m2, Exec::parallel);
  CHECK(s.violations == p.violations);
  bool has5 = false;
  for (const auto& v : s.violations)
    if (v.find("relation (5)") != std::string::npos) has5 = true;
  CHECK(has5);
}
