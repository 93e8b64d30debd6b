#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pervarr/error.hpp"
#include "pervarr/recollement.hpp"
#include "test_util.hpp"

using namespace pervarr;
using namespace pervarr::testutil;

namespace {

// Module annihilated by every chamber idempotent on a poset: supported on
// the given faces (which must be a closed union), identity there.
RModule closed_support_module(const Workbench& ctx,
                              const std::vector<std::string>& faces_on) {
  RModule m;
  m.ctx = ctx;
  m.dim = 1;
  m.act.assign(ctx.poset->size(), Matrix(1, 1));
  for (const auto& name : faces_on)
    m.act[face(*ctx.poset, name)] = Matrix::identity(1);
  ValidationReport rep = validate_module(m);
  REQUIRE(rep.ok());
  return m;
}

Subspace block_embed(const Subspace& a, std::size_t total, std::size_t offset) {
  std::vector<Vec> gens;
  for (const Vec& b : a.basis()) {
    Vec v(total, Rat(0));
    for (std::size_t i = 0; i < b.size(); ++i) v[offset + i] = b[i];
    gens.push_back(v);
  }
  return Subspace::span_of(total, gens);
}

}  // namespace

TEST_CASE("T and N on the constant module") {
  RModule c = constant_module(braid_a2_ctx(), 2);
  std::size_t a = c.poset().chambers().front();
  CHECK(t_submodule(c, a) == Subspace::full(2));
  CHECK(n_submodule(c, a).dim() == 0);
}

TEST_CASE("T and N on a module annihilated by the chambers") {
  RModule m = closed_support_module(one_line_ctx(), {"0"});
  std::size_t a = m.poset().chambers().front();
  CHECK(t_submodule(m, a).dim() == 0);
  CHECK(n_submodule(m, a) == Subspace::full(1));
}

TEST_CASE("derived T and N of the (1,1) extension") {
  RModule m = one_hyperplane_ab(one_line_ctx(), rat(1), rat(1));
  std::size_t p = face(m.poset(), "+");
  CHECK(t_submodule(m, p) == Subspace::full(2));
  Subspace n = n_submodule(m, p);
  REQUIRE(n.dim() == 1);
  Vec diag = {rat(1), rat(-1)};
  CHECK(n.contains(diag));
}

TEST_CASE("N is zero for ab != 1, cross-checked against candidate lines") {
  RModule m = one_hyperplane_ab(one_line_ctx(), rat(1), rat(2));
  std::size_t p = face(m.poset(), "+");
  Subspace n = n_submodule(m, p);
  CHECK(n.dim() == 0);
  // Brute-force oracle: the only candidate line inside ker(e+) is ker(e+)
  // itself; check it is not stable under the other idempotent.
  Subspace ker = kernel_basis(m.act[p]);
  REQUIRE(ker.dim() == 1);
  bool stable = true;
  for (const Matrix& op : module_operator_set(m))
    for (const Vec& b : ker.basis())
      if (!ker.contains(op * b)) stable = false;
  CHECK_FALSE(stable);
}

TEST_CASE("T and N outputs are stable under every operator") {
  for (const RModule& m : module_zoo()) {
    std::size_t a = m.poset().chambers().front();
    for (const Subspace& s : {t_submodule(m, a), n_submodule(m, a)})
      for (const Matrix& op : module_operator_set(m))
        for (const Vec& b : s.basis()) CHECK(s.contains(op * b));
  }
}

TEST_CASE("chamber independence of the recollement subspaces") {
  for (const RModule& m : module_zoo()) {
    auto chambers = m.poset().chambers();
    Subspace t0 = t_submodule(m, chambers.front());
    Subspace n0 = n_submodule(m, chambers.front());
    for (std::size_t c : chambers) {
      CHECK(t_submodule(m, c) == t0);
      CHECK(n_submodule(m, c) == n0);
    }
  }
}

TEST_CASE("recollement identities around i_star") {
  // j^* i_* = 0, i^* i_* = id, i^! i_* = id, on closed-support modules.
  struct Case {
    const Workbench* ctx;
    std::vector<std::string> faces_on;
  };
  std::vector<Case> cases = {
      {&one_line_ctx(), {"0"}},
      {&boolean2_ctx(), {"0+", "00", "0-"}},
      {&braid_a2_ctx(), {"000"}},
  };
  for (const auto& tc : cases) {
    RModule v = closed_support_module(*tc.ctx, tc.faces_on);
    RModule inc = i_star(v);
    std::size_t a = inc.poset().chambers().front();
    LocalSystemRep ls = j_restrict(inc, a);
    CHECK(ls.dim() == 0);
    RModule star = i_upper_star(inc, a);
    CHECK(star.dim == v.dim);
    for (std::size_t f = 0; f < v.poset().size(); ++f)
      CHECK(star.act[f] == v.act[f]);
    RModule shriek = i_upper_shriek(inc, a);
    CHECK(shriek.dim == v.dim);
    for (std::size_t f = 0; f < v.poset().size(); ++f)
      CHECK(shriek.act[f] == v.act[f]);
  }
}

TEST_CASE("i_star rejects modules seen by a chamber") {
  RModule c = constant_module(one_line_ctx(), 1);
  CHECK_THROWS_AS(i_star(c), NotSupportedOnClosedError);
}

TEST_CASE("i_upper_star and i_upper_shriek of the (1,1) extension") {
  RModule m = one_hyperplane_ab(one_line_ctx(), rat(1), rat(1));
  std::size_t p = face(m.poset(), "+");
  RModule star = i_upper_star(m, p);
  CHECK(star.dim == 0);  // T is everything
  RModule shriek = i_upper_shriek(m, p);
  CHECK(shriek.dim == 1);
  for (std::size_t ch : m.poset().chambers())
    CHECK(shriek.act[ch].is_zero());
}

TEST_CASE("purification of the trivial-monodromy seed") {
  RModule m = one_hyperplane_ab(one_line_ctx(), rat(1), rat(1));
  std::size_t p = face(m.poset(), "+");
  RModule ic = intermediate_extension_from(m, p);
  CHECK(ic.dim == 1);
  for (std::size_t f = 0; f < ic.poset().size(); ++f)
    CHECK(ic.act[f].is_identity());
}

TEST_CASE("purification of a q != 1 seed") {
  for (const Rat& q : {rat(2), rat(-1), rat(1, 3)}) {
    Matrix t(1, 1);
    t(0, 0) = q;
    RModule seed = one_hyperplane_extension(one_line_ctx(), t);
    std::size_t p = face(seed.poset(), "+");
    RModule ic = intermediate_extension_from(seed, p);
    CHECK(ic.dim == 2);
    for (std::size_t f = 0; f < ic.poset().size(); ++f)
      if (f != ic.poset().zero_face()) CHECK(rank(ic.act[f]) == 1);
    CHECK(i_upper_star(ic, p).dim == 0);
    CHECK(i_upper_shriek(ic, p).dim == 0);
    LocalSystemRep ls = j_restrict(ic, p);
    REQUIRE(ls.monodromy.size() == 1);
    REQUIRE(ls.dim() == 1);
    CHECK(ls.monodromy[0](0, 0) == q);
  }
}

TEST_CASE("purification of the constant module returns it unchanged") {
  RModule c = constant_module(braid_a2_ctx(), 2);
  std::size_t a = c.poset().chambers().front();
  RModule ic = intermediate_extension_from(c, a);
  CHECK(ic.dim == 2);
  for (std::size_t f = 0; f < c.poset().size(); ++f)
    CHECK(ic.act[f] == c.act[f]);
}

TEST_CASE("purification depends only on the open restriction") {
  RModule s1 = one_hyperplane_ab(one_line_ctx(), rat(1), rat(2));
  RModule s2 = one_hyperplane_ab(one_line_ctx(), rat(2), rat(1));
  std::size_t p = face(s1.poset(), "+");
  RModule ic1 = intermediate_extension_from(s1, p);
  RModule ic2 = intermediate_extension_from(s2, p);
  CHECK(ic1.dim == ic2.dim);
  CHECK(modules_isomorphic(ic1, ic2));
  // A fatter seed with the same open part: direct sum with a closed piece.
  RModule closed = closed_support_module(one_line_ctx(), {"0"});
  RModule fat = direct_sum(s1, closed);
  RModule ic3 = intermediate_extension_from(fat, p);
  CHECK(ic3.dim == ic1.dim);
  CHECK(modules_isomorphic(ic3, ic1));
}

TEST_CASE("all seeds with one monodromy purify to isomorphic modules") {
  // ab = 6 through several factorizations.
  std::size_t p = face(*one_line_ctx().poset, "+");
  std::vector<RModule> ics;
  for (auto [a, b] : std::vector<std::pair<long, long>>{
           {1, 6}, {6, 1}, {2, 3}, {3, 2}, {-2, -3}}) {
    RModule seed = one_hyperplane_ab(one_line_ctx(), rat(a), rat(b));
    ics.push_back(intermediate_extension_from(seed, p));
  }
  for (std::size_t i = 1; i < ics.size(); ++i) {
    CHECK(ics[i].dim == ics[0].dim);
    CHECK(modules_isomorphic(ics[0], ics[i]));
  }
}

TEST_CASE("chamber independence of the intermediate extension") {
  RModule seed = one_hyperplane_ab(one_line_ctx(), rat(1), rat(3));
  RModule a = intermediate_extension_from(seed, face(seed.poset(), "+"));
  RModule b = intermediate_extension_from(seed, face(seed.poset(), "-"));
  CHECK(a.dim == b.dim);
  CHECK(modules_isomorphic(a, b));
}

TEST_CASE("functors commute with direct sums") {
  RModule m1 = one_hyperplane_ab(one_line_ctx(), rat(1), rat(1));
  RModule m2 = one_hyperplane_ab(one_line_ctx(), rat(1), rat(2));
  RModule sum = direct_sum(m1, m2);
  std::size_t p = face(sum.poset(), "+");

  CHECK(t_submodule(sum, p) ==
        block_embed(t_submodule(m1, p), 4, 0)
            .sum(block_embed(t_submodule(m2, p), 4, 2)));
  CHECK(n_submodule(sum, p) ==
        block_embed(n_submodule(m1, p), 4, 0)
            .sum(block_embed(n_submodule(m2, p), 4, 2)));

  RModule star_sum = i_upper_star(sum, p);
  RModule star1 = i_upper_star(m1, p);
  RModule star2 = i_upper_star(m2, p);
  CHECK(star_sum.dim == star1.dim + star2.dim);
  for (std::size_t f = 0; f < sum.poset().size(); ++f)
    CHECK(star_sum.act[f] == block_diag(star1.act[f], star2.act[f]));

  RModule shr_sum = i_upper_shriek(sum, p);
  RModule shr1 = i_upper_shriek(m1, p);
  RModule shr2 = i_upper_shriek(m2, p);
  CHECK(shr_sum.dim == shr1.dim + shr2.dim);
  for (std::size_t f = 0; f < sum.poset().size(); ++f)
    CHECK(shr_sum.act[f] == block_diag(shr1.act[f], shr2.act[f]));

  RModule ic_sum = intermediate_extension_from(sum, p);
  RModule ic1 = intermediate_extension_from(m1, p);
  RModule ic2 = intermediate_extension_from(m2, p);
  CHECK(ic_sum.dim == ic1.dim + ic2.dim);
}

TEST_CASE("support reports") {
  RModule c = constant_module(braid_a2_ctx(), 1);
  SupportReport rep = support(c);
  CHECK(rep.support_faces.size() == c.poset().size());
  CHECK(rep.closed);
  REQUIRE(rep.maximal_flats.size() == 1);
  CHECK(rep.maximal_flats[0].space == Subspace::full(2));

  RModule line = closed_support_module(boolean2_ctx(), {"0+", "00", "0-"});
  SupportReport rep2 = support(line);
  CHECK(rep2.support_faces.size() == 3);
  CHECK(rep2.closed);
  REQUIRE(rep2.maximal_flats.size() == 1);
  CHECK(rep2.maximal_flats[0].space ==
        Subspace::span_of(2, {{rat(0), rat(1)}}));
  CHECK(annihilated_by_iz(line, {rep2.maximal_flats[0]}));
  Flat whole = flat_from(boolean2(), {});
  CHECK(annihilated_by_iz(line, {whole}));
  Flat xaxis = flat_from(boolean2(), {1});
  CHECK_FALSE(annihilated_by_iz(line, {xaxis}));
}

TEST_CASE("rho pullback onto a flat of the boolean plane") {
  const Workbench& ctx = boolean2_ctx();
  Flat z = flat_from(boolean2(), {0});
  Restriction restr = flats_and_restriction(*ctx.poset, z);
  Workbench rctx = Workbench::make(restr.poset_z);

  RModule constant_z = constant_module(rctx, 1);
  RModule pulled = rho_pullback(ctx, restr, constant_z);
  CHECK(pulled.dim == 1);
  CHECK(pulled.validated);
  std::set<std::string> on;
  for (std::size_t f = 0; f < pulled.poset().size(); ++f)
    if (!pulled.act[f].is_zero()) on.insert(pulled.poset().face_name(f));
  CHECK(on == std::set<std::string>{"0+", "00", "0-"});
  CHECK(annihilated_by_iz(pulled, {z}));

  // q != 1 seed: 2-dimensional module with zero idempotents off the axis.
  Matrix t(1, 1);
  t(0, 0) = rat(2);
  RModule seed = one_hyperplane_extension(rctx, t);
  RModule pulled2 = rho_pullback(ctx, restr, seed);
  CHECK(pulled2.dim == 2);
  CHECK(pulled2.validated);
  CHECK(annihilated_by_iz(pulled2, {z}));
  for (std::size_t f = 0; f < pulled2.poset().size(); ++f) {
    bool in_z = restr.from_ambient.count(f) > 0;
    CHECK(pulled2.act[f].is_zero() == !in_z);
  }
}

TEST_CASE("identity transport on the whole-space flat") {
  const Workbench& ctx = one_line_ctx();
  Flat whole = flat_from(one_line(), {});
  Restriction restr = flats_and_restriction(*ctx.poset, whole);
  Workbench rctx = Workbench::make(restr.poset_z);
  RModule m = one_hyperplane_ab(rctx, rat(1), rat(2));
  RModule pulled = rho_pullback(ctx, restr, m);
  CHECK(pulled.dim == m.dim);
  for (std::size_t i = 0; i < restr.to_ambient.size(); ++i)
    CHECK(pulled.act[restr.to_ambient[i]] == m.act[i]);
}

TEST_CASE("ic pipeline on a stratum of the boolean plane") {
  const Workbench& ctx = boolean2_ctx();
  Flat z = flat_from(boolean2(), {0});
  Restriction restr = flats_and_restriction(*ctx.poset, z);
  Workbench rctx = Workbench::make(restr.poset_z);
  std::size_t chamber_b = restr.to_ambient[restr.poset_z.chambers().front()];

  // Trivial monodromy: one-dimensional module on C_Z.
  RModule seed1 = one_hyperplane_ab(rctx, rat(1), rat(1));
  RModule ic1 = ic_on_stratum(ctx, restr, seed1, chamber_b);
  CHECK(ic1.dim == 1);
  for (std::size_t f = 0; f < ic1.poset().size(); ++f) {
    bool in_z = restr.from_ambient.count(f) > 0;
    CHECK(ic1.act[f].is_zero() == !in_z);
    if (in_z) CHECK(ic1.act[f].is_identity());
  }

  // q != 1: two-dimensional module supported exactly on C_Z with vanishing
  // relative i* and i^!.
  Matrix t(1, 1);
  t(0, 0) = rat(2);
  RModule seed2 = one_hyperplane_extension(rctx, t);
  RModule ic2 = ic_on_stratum(ctx, restr, seed2, chamber_b);
  CHECK(ic2.dim == 2);
  for (std::size_t f = 0; f < ic2.poset().size(); ++f) {
    bool in_z = restr.from_ambient.count(f) > 0;
    CHECK(ic2.act[f].is_zero() == !in_z);
  }
  CHECK(t_submodule(ic2, chamber_b) == Subspace::full(2));
  CHECK(n_submodule(ic2, chamber_b).dim() == 0);

  // Purify-then-transport agrees with transport-then-purify exactly.
  std::size_t bz = restr.from_ambient.at(chamber_b);
  RModule pz = intermediate_extension_from(seed2, bz);
  RModule transported = rho_pullback(ctx, restr, pz);
  CHECK(transported.dim == ic2.dim);
  for (std::size_t f = 0; f < ic2.poset().size(); ++f)
    CHECK(transported.act[f] == ic2.act[f]);
}

TEST_CASE("whole-space ic is the plain intermediate extension") {
  const Workbench& ctx = one_line_ctx();
  Flat whole = flat_from(one_line(), {});
  Restriction restr = flats_and_restriction(*ctx.poset, whole);
  Workbench rctx = Workbench::make(restr.poset_z);
  RModule seed = one_hyperplane_ab(rctx, rat(1), rat(1));
  std::size_t chamber_b = restr.to_ambient[restr.poset_z.chambers().front()];
  RModule ic = ic_on_stratum(ctx, restr, seed, chamber_b);
  CHECK(ic.dim == 1);
  for (std::size_t f = 0; f < ic.poset().size(); ++f)
    CHECK(ic.act[f].is_identity());
}

TEST_CASE("intermediate extension of a closed-support module is zero") {
  RModule v = closed_support_module(one_line_ctx(), {"0"});
  std::size_t a = v.poset().chambers().front();
  RModule p = intermediate_extension_from(v, a);
  CHECK(p.dim == 0);
}

TEST_CASE("ic on the origin stratum is the skyscraper") {
  // The flat cut out by two hyperplanes of the braid arrangement is the
  // origin; its restricted arrangement is empty and every seed transports
  // to a module supported on the zero face alone.
  const Workbench& ctx = braid_a2_ctx();
  Flat origin = flat_from(ctx.poset->arrangement(), {0, 1});
  REQUIRE(origin.space.dim() == 0);
  Restriction restr = flats_and_restriction(*ctx.poset, origin);
  REQUIRE(restr.poset_z.size() == 1);
  Workbench rctx = Workbench::make(restr.poset_z);
  RModule seed = constant_module(rctx, 2);
  std::size_t b = restr.to_ambient[restr.poset_z.chambers().front()];
  CHECK(b == ctx.poset->zero_face());
  RModule ic = ic_on_stratum(ctx, restr, seed, b);
  CHECK(ic.dim == 2);
  for (std::size_t f = 0; f < ic.poset().size(); ++f) {
    if (f == ic.poset().zero_face())
      CHECK(ic.act[f].is_identity());
    else
      CHECK(ic.act[f].is_zero());
  }
  SupportReport rep = support(ic);
  CHECK(rep.support_faces == std::vector<std::size_t>{ic.poset().zero_face()});
  CHECK(rep.closed);
}

TEST_CASE("purified modules have vanishing i* and i^! on the zoo") {
  for (const RModule& m : module_zoo()) {
    std::size_t a = m.poset().chambers().front();
    RModule p = purify(m, a);
    CHECK(i_upper_star(p, a).dim == 0);
    CHECK(i_upper_shriek(p, a).dim == 0);
  }
}
