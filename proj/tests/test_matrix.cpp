#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pervarr/matrix.hpp"
#include "pervarr/subspace.hpp"

using namespace pervarr;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<long> d(-4, 4);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rat(d(rng), 1 + (d(rng) & 1));
  return m;
}

Matrix random_invertible(std::mt19937& rng, std::size_t n) {
  for (;;) {
    Matrix m = random_matrix(rng, n);
    if (is_invertible(m)) return m;
  }
}

}  // namespace

TEST_CASE("rref on proportional rows") {
  Matrix m{{1, 2}, {2, 4}};
  auto [red, piv] = rref(m);
  CHECK(piv == std::vector<std::size_t>{0});
  CHECK(red(0, 0) == 1);
  CHECK(red(0, 1) == 2);
  CHECK(red(1, 0) == 0);
  CHECK(red(1, 1) == 0);
}

TEST_CASE("rref fixes the identity") {
  Matrix id = Matrix::identity(3);
  auto [red, piv] = rref(id);
  CHECK(red == id);
  CHECK(piv == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("rref scales a fractional row") {
  Matrix m(2, 2);
  m(0, 0) = rat(1, 2);
  auto [red, piv] = rref(m);
  CHECK(red(0, 0) == 1);
  CHECK(piv.size() == 1);
}

TEST_CASE("rref is idempotent on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix m = random_matrix(rng, 3);
    auto [red, piv] = rref(m);
    auto [red2, piv2] = rref(red);
    CHECK(red == red2);
    CHECK(piv == piv2);
  }
}

TEST_CASE("kernel and image bases") {
  Matrix row(1, 2);
  row(0, 0) = 1;
  row(0, 1) = 1;
  Subspace k = kernel_basis(row);
  REQUIRE(k.dim() == 1);
  Vec v = {rat(1), rat(-1)};
  CHECK(k.contains(v));

  CHECK(image_basis(Matrix::identity(3)) == Subspace::full(3));
}

TEST_CASE("exact inverse") {
  Matrix m(1, 1);
  m(0, 0) = 2;
  Matrix inv = inverse(m);
  CHECK(inv(0, 0) == rat(1, 2));

  Matrix sing{{1, 2}, {2, 4}};
  CHECK_THROWS_AS(inverse(sing), SingularError);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_invertible(rng, 3);
    CHECK((inverse(a) * a).is_identity());
    CHECK((a * inverse(a)).is_identity());
  }
}

TEST_CASE("solve finds exact coordinates") {
  std::mt19937 rng(13);
  Matrix a = random_invertible(rng, 3);
  Matrix rhs = random_matrix(rng, 3);
  Matrix x = solve(a, rhs);
  CHECK(a * x == rhs);

  // Inconsistent system: rank-one matrix, generic rhs.
  Matrix low{{1, 0}, {2, 0}};
  Matrix b(2, 1);
  b(0, 0) = 1;
  b(1, 0) = 3;
  CHECK_THROWS_AS(solve(low, b), SingularError);
}

TEST_CASE("closure_under examples") {
  // Identity fixes the seed.
  Subspace seed = Subspace::span_of(2, {{rat(1), rat(0)}});
  CHECK(closure_under({Matrix::identity(2)}, seed) == seed);

  // Nilpotent shift on Q^3 starting at e3 sweeps the whole space.
  Matrix shift(3, 3);
  shift(0, 1) = 1;
  shift(1, 2) = 1;
  Subspace e3 = Subspace::span_of(3, {{rat(0), rat(0), rat(1)}});
  CHECK(closure_under({shift}, e3) == Subspace::full(3));

  // An eigenvector line is already closed.
  Matrix shear{{1, 1}, {0, 1}};
  Subspace line = Subspace::span_of(2, {{rat(1), rat(0)}});
  CHECK(closure_under({shear}, line) == line);
}

TEST_CASE("closure_under is monotone and idempotent") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix op = random_matrix(rng, 3);
    Subspace seed = Subspace::span_of(3, {{rat(1), rat(2), rat(0)}});
    Subspace c = closure_under({op}, seed);
    CHECK(c.contains(seed));
    CHECK(closure_under({op}, c) == c);
  }
}

TEST_CASE("largest_invariant_in examples") {
  // ops = {identity}, constraint = identity: zero subspace.
  CHECK(largest_invariant_in({Matrix::identity(2)}, Matrix::identity(2)).dim() ==
        0);

  // ops = {0}, constraint = [[1,0]] on Q^2: the second axis.
  Matrix zero(2, 2);
  Matrix constraint(1, 2);
  constraint(0, 0) = 1;
  Subspace s = largest_invariant_in({zero}, constraint);
  REQUIRE(s.dim() == 1);
  Vec e2 = {rat(0), rat(1)};
  CHECK(s.contains(e2));
}

TEST_CASE("largest_invariant_in is maximal") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    Matrix op = random_matrix(rng, 3);
    Matrix constraint(1, 3);
    constraint(0, 0) = 1;
    constraint(0, 2) = 1;
    Subspace s = largest_invariant_in({op}, constraint);
    // Invariance and the constraint hold...
    for (const Vec& b : s.basis()) {
      CHECK(is_zero_vec(constraint * b));
      CHECK(s.contains(op * b));
    }
    // ...and every 1-dimensional extension breaks one of them.
    for (std::size_t i = 0; i < 3; ++i) {
      Vec e(3, Rat(0));
      e[i] = 1;
      if (s.contains(e)) continue;
      Subspace bigger = s.sum(Subspace::span_of(3, {e}));
      bool constraint_ok = true, stable = true;
      for (const Vec& b : bigger.basis()) {
        if (!is_zero_vec(constraint * b)) constraint_ok = false;
        if (!bigger.contains(op * b)) stable = false;
      }
      CHECK_FALSE((constraint_ok && stable));
    }
  }
}

TEST_CASE("subspace algebra") {
  Subspace a = Subspace::span_of(3, {{rat(1), rat(0), rat(0)}, {rat(0), rat(1), rat(0)}});
  Subspace b = Subspace::span_of(3, {{rat(0), rat(1), rat(0)}, {rat(0), rat(0), rat(1)}});
  Subspace meet = a.intersect(b);
  REQUIRE(meet.dim() == 1);
  Vec e2 = {rat(0), rat(1), rat(0)};
  CHECK(meet.contains(e2));
  CHECK(a.sum(b) == Subspace::full(3));

  Matrix proj(3, 3);
  proj(0, 0) = 1;
  Subspace pre = a.preimage_under(proj);  // proj x in a always
  CHECK(pre == Subspace::full(3));
}
