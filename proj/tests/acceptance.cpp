// Acceptance suite: one check per shipped guarantee, one PASS/FAIL line
// each, exact comparisons throughout (no tolerances anywhere).

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "pervarr/coxeter.hpp"
#include "pervarr/io.hpp"
#include "pervarr/sympow.hpp"
#include "test_util.hpp"

using namespace pervarr;
using namespace pervarr::testutil;

namespace {

int failures = 0;

void criterion(int number, const std::string& name,
               const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (") + e.what() + ")";
  }
  std::printf("[%s] criterion %d: %s%s\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), note.c_str());
  if (!ok) ++failures;
}

#define REQUIRE_TRUE(x) \
  do {                  \
    if (!(x)) return false; \
  } while (0)

std::string data_path(const std::string& name) {
  return std::string(PERVARR_DATA_DIR) + "/" + name;
}

// Exhaustive oracle: try all 3^m sign vectors, decide realizability by a
// single strict feasibility problem per candidate.
std::set<std::string> all_realizable_sign_vectors(const Arrangement& arr) {
  std::set<std::string> out;
  std::size_t m = arr.normals.size();
  std::vector<Sign> signs(m, Sign::zero);
  std::vector<int> digit(m, 0);
  for (;;) {
    StrictSystem sys;
    sys.dim = arr.dim;
    for (std::size_t h = 0; h < m; ++h) {
      Sign s = digit[h] == 0 ? Sign::zero : (digit[h] == 1 ? Sign::plus : Sign::minus);
      signs[h] = s;
      Vec row = arr.normals[h];
      if (s == Sign::zero) {
        sys.eqs.push_back(row);
      } else if (s == Sign::plus) {
        sys.gts.push_back(row);
      } else {
        for (Rat& x : row) x = -x;
        sys.gts.push_back(row);
      }
    }
    if (feasible_point(sys)) out.insert(sign_string(signs));
    std::size_t k = 0;
    while (k < m && ++digit[k] > 2) digit[k++] = 0;
    if (k == m) break;
  }
  return out;
}

std::set<std::string> poset_sign_vectors(const FacePoset& poset) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < poset.size(); ++i) out.insert(poset.face_name(i));
  return out;
}

// Modules on the braid arrangement for the Zifferblatt sweep: constants,
// sums, flat transports and plain shadows of equivariant modules.
std::vector<RModule> braid_zoo() {
  std::vector<RModule> zoo;
  const Workbench& ctx = braid_a2_ctx();
  zoo.push_back(constant_module(ctx, 1));
  zoo.push_back(constant_module(ctx, 2));
  zoo.push_back(constant_module(ctx, 3));
  zoo.push_back(direct_sum(zoo[0], zoo[1]));

  Flat z = flat_from(ctx.poset->arrangement(), {0});
  Restriction restr = flats_and_restriction(*ctx.poset, z);
  Workbench rctx = Workbench::make(restr.poset_z);
  for (long q : {1, 2}) {
    Matrix t(1, 1);
    t(0, 0) = rat(q);
    RModule seed = one_hyperplane_extension(rctx, t);
    zoo.push_back(rho_pullback(ctx, restr, seed));
    zoo.push_back(ic_on_stratum(
        ctx, restr, seed, restr.to_ambient[restr.poset_z.chambers().front()]));
  }
  return zoo;
}

bool run_cli(const std::string& args, int expect_exit, const std::string& expect_text) {
  std::string cmd = std::string(PERVARR_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return false;
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return code == expect_exit &&
         (expect_text.empty() || out.find(expect_text) != std::string::npos);
}

}  // namespace

int main() {
  criterion(1, "face enumeration with exhaustive oracle", [] {
    FacePoset line = enumerate_faces(one_line());
    REQUIRE_TRUE(line.size() == 3 && line.chambers().size() == 2);
    FacePoset b2 = enumerate_faces(boolean2());
    REQUIRE_TRUE(b2.size() == 9);
    FacePoset a2 = enumerate_faces(braid_a2());
    REQUIRE_TRUE(a2.size() == 13 && a2.chambers().size() == 6 &&
                 a2.codim2_faces().size() == 1);
    for (const Arrangement& arr : {one_line(), boolean2(), braid_a2()})
      REQUIRE_TRUE(poset_sign_vectors(enumerate_faces(arr)) ==
                   all_realizable_sign_vectors(arr));
    // Permutation invariance of the counts.
    std::vector<std::vector<long>> rows = {{1, 0}, {0, 1}, {1, 1}};
    std::vector<std::size_t> perm = {0, 1, 2};
    do {
      Arrangement arr;
      arr.dim = 2;
      for (std::size_t i : perm) {
        Vec f;
        for (long x : rows[i]) f.push_back(rat(x));
        arr.normals.push_back(f);
      }
      FacePoset poset = enumerate_faces(arr);
      REQUIRE_TRUE(poset.size() == 13 && poset.chambers().size() == 6);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
  });

  criterion(2, "equivalence round trip on the module zoo", [] {
    auto zoo = module_zoo();
    REQUIRE_TRUE(zoo.size() >= 20);
    for (const RModule& m : zoo) {
      DoubleRep e = expand(m);
      RModule back = collapse(e);
      REQUIRE_TRUE(back.dim == m.dim);
      for (std::size_t f = 0; f < m.poset().size(); ++f)
        REQUIRE_TRUE(back.act[f] == m.act[f]);
      REQUIRE_TRUE(nat_iso_check(e).ok());
    }
    return true;
  });

  criterion(3, "zifferblatt relations on the braid arrangement", [] {
    for (const RModule& m : braid_zoo()) {
      ZifferblattReport rep = check_zifferblatt(m);
      REQUIRE_TRUE(rep.ok());
    }
    RModule bad = constant_module(braid_a2_ctx(), 1);
    bad.act[face(bad.poset(), "+++")] = Matrix(1, 1);
    bad.validated = false;
    ValidationReport vrep = validate_module(bad);
    bool has_r2 = false;
    for (const auto& v : vrep.violations)
      if (v.rfind("R2", 0) == 0) has_r2 = true;
    REQUIRE_TRUE(has_r2);
    REQUIRE_TRUE(!check_zifferblatt(bad).ok());
    return true;
  });

  criterion(4, "recollement identities", [] {
    // i_star inputs: modules supported on closed unions of strata.
    struct Case {
      const Workbench* ctx;
      std::vector<std::string> faces_on;
    };
    for (const auto& tc : std::vector<Case>{
             {&one_line_ctx(), {"0"}},
             {&boolean2_ctx(), {"0+", "00", "0-"}},
             {&braid_a2_ctx(), {"000"}}}) {
      RModule v;
      v.ctx = *tc.ctx;
      v.dim = 1;
      v.act.assign(tc.ctx->poset->size(), Matrix(1, 1));
      for (const auto& name : tc.faces_on)
        v.act[face(*tc.ctx->poset, name)] = Matrix::identity(1);
      REQUIRE_TRUE(validate_module(v).ok());
      RModule inc = i_star(v);
      std::size_t a = inc.poset().chambers().front();
      REQUIRE_TRUE(j_restrict(inc, a).dim() == 0);
      RModule star = i_upper_star(inc, a);
      RModule shriek = i_upper_shriek(inc, a);
      REQUIRE_TRUE(star.dim == v.dim && shriek.dim == v.dim);
      for (std::size_t f = 0; f < v.poset().size(); ++f)
        REQUIRE_TRUE(star.act[f] == v.act[f] && shriek.act[f] == v.act[f]);
    }
    for (const RModule& m : module_zoo()) {
      std::size_t a = m.poset().chambers().front();
      RModule p = purify(m, a);
      REQUIRE_TRUE(i_upper_star(p, a).dim == 0);
      REQUIRE_TRUE(i_upper_shriek(p, a).dim == 0);
      std::size_t d = image_basis(m.act[a]).dim();
      for (std::size_t c : m.poset().chambers())
        REQUIRE_TRUE(image_basis(m.act[c]).dim() == d);
    }
    return true;
  });

  criterion(5, "intermediate extension on one hyperplane", [] {
    RModule triv = one_hyperplane_ab(one_line_ctx(), rat(1), rat(1));
    std::size_t p = face(triv.poset(), "+");
    RModule ic1 = intermediate_extension_from(triv, p);
    REQUIRE_TRUE(ic1.dim == 1);
    for (std::size_t f = 0; f < ic1.poset().size(); ++f)
      REQUIRE_TRUE(ic1.act[f].is_identity());

    for (const Rat& q : {rat(2), rat(-1), rat(1, 3)}) {
      RModule seed = one_hyperplane_ab(one_line_ctx(), rat(1), q);
      RModule ic = intermediate_extension_from(seed, p);
      REQUIRE_TRUE(ic.dim == 2);
      for (std::size_t f = 0; f < ic.poset().size(); ++f)
        if (f != ic.poset().zero_face()) REQUIRE_TRUE(rank(ic.act[f]) == 1);
      REQUIRE_TRUE(i_upper_star(ic, p).dim == 0);
      REQUIRE_TRUE(i_upper_shriek(ic, p).dim == 0);
      LocalSystemRep ls = j_restrict(ic, p);
      REQUIRE_TRUE(ls.dim() == 1 && ls.monodromy.size() == 1);
      REQUIRE_TRUE(ls.monodromy[0](0, 0) == q);
    }
    return true;
  });

  criterion(6, "stratum IC pipeline on the boolean plane", [] {
    const Workbench& ctx = boolean2_ctx();
    Flat z = flat_from(boolean2(), {0});
    Restriction restr = flats_and_restriction(*ctx.poset, z);
    Workbench rctx = Workbench::make(restr.poset_z);
    std::size_t chamber_b = restr.to_ambient[restr.poset_z.chambers().front()];

    Matrix t(1, 1);
    t(0, 0) = rat(2);
    RModule seed = one_hyperplane_extension(rctx, t);
    RModule pulled = rho_pullback(ctx, restr, seed);
    REQUIRE_TRUE(pulled.validated);
    REQUIRE_TRUE(annihilated_by_iz(pulled, {z}));

    RModule ic = ic_on_stratum(ctx, restr, seed, chamber_b);
    REQUIRE_TRUE(ic.dim == 2);
    for (std::size_t f = 0; f < ic.poset().size(); ++f)
      REQUIRE_TRUE(ic.act[f].is_zero() == (restr.from_ambient.count(f) == 0));
    REQUIRE_TRUE(t_submodule(ic, chamber_b) == Subspace::full(2));
    REQUIRE_TRUE(n_submodule(ic, chamber_b).dim() == 0);

    RModule c1 = constant_module(rctx, 1);
    RModule pulled2 = rho_pullback(ctx, restr, c1);
    REQUIRE_TRUE(pulled2.validated && annihilated_by_iz(pulled2, {z}));
    return true;
  });

  criterion(7, "coxeter suite", [] {
    auto a2 = CoxeterSystem::build_type("A", 2);
    REQUIRE_TRUE(a2->order() == 6);
    std::size_t cplus = 0;
    for (std::size_t c = 0; c < a2->poset().size(); ++c)
      if (a2->poset().leq(c, a2->fundamental_chamber())) ++cplus;
    REQUIRE_TRUE(a2->n_subsets() == 4 && cplus == 4);
    for (unsigned i = 0; i < 4; ++i)
      for (unsigned j = 0; j < 4; ++j)
        REQUIRE_TRUE(lambda_leq(*a2, i, j) == ((i & j) == j));

    std::vector<RWModule> zoo;
    zoo.push_back(rw_trivial_module(a2, 1));
    zoo.push_back(rw_sign_module(a2));
    zoo.push_back(rw_direct_sum(zoo[0], zoo[1]));
    for (RWModule& m : zoo) {
      ValidationReport rep = validate_rw_module(m);
      REQUIRE_TRUE(rep.ok());
      BraidRep braid = braid_restrict(m);
      REQUIRE_TRUE(braid.sigma.size() == 2);
      Matrix sts = braid.sigma[0] * braid.sigma[1] * braid.sigma[0];
      Matrix tst = braid.sigma[1] * braid.sigma[0] * braid.sigma[1];
      REQUIRE_TRUE(sts == tst);
    }

    // Equivariant purification of the bundled A1 seed.
    RWModule seed = rw_module_from_json(load_json_file(data_path("rw_seed_a1.json")));
    REQUIRE_TRUE(validate_rw_module(seed).ok());
    RWModule p = rw_intermediate_extension(seed);
    REQUIRE_TRUE(p.dim == 1);
    REQUIRE_TRUE(rw_t_submodule(p).dim() == p.dim);  // i* = 0
    REQUIRE_TRUE(rw_n_submodule(p).dim() == 0);      // i^! = 0
    return true;
  });

  criterion(8, "symmetric power separation", [] {
    Matrix shear{{1, 1}, {0, 1}};
    auto k = sym_separation({shear, Matrix::identity(2)}, {rat(1), rat(-1)}, 3);
    REQUIRE_TRUE(k.has_value() && *k == 1);
    REQUIRE_TRUE(!sym_separation({Matrix::identity(2)}, {rat(0)}, 4).has_value());

    std::mt19937 rng(97);
    std::uniform_int_distribution<long> d(-3, 3);
    int done = 0;
    while (done < 50) {
      std::size_t n = 2 + done % 2;
      Matrix a(n, n), b(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          a(i, j) = rat(d(rng));
          b(i, j) = rat(d(rng));
        }
      if (!is_invertible(a) || !is_invertible(b)) continue;
      for (unsigned kk : {1u, 2u, 3u})
        REQUIRE_TRUE(sym_power(a * b, kk) == sym_power(a, kk) * sym_power(b, kk));
      ++done;
    }
    return true;
  });

  criterion(9, "serialization round trips and CLI exit codes", [] {
    for (const char* name :
         {"one_hyperplane.json", "boolean2.json", "braid_a2.json",
          "boolean3.json", "braid_a3.json", "one_hyperplane_module_q2.json",
          "constant_braid_a2_module.json", "bad_module.json",
          "coxeter_a2.json", "rw_trivial_a2.json", "rw_sign_a2.json",
          "rw_seed_a1.json", "symsep_example.json"}) {
      std::ifstream in(data_path(name));
      REQUIRE_TRUE(in.good());
      std::ostringstream ss;
      ss << in.rdbuf();
      Json j = load_json_file(data_path(name));
      std::string emitted;
      if (j.contains("actions"))
        emitted = json_to_string(module_to_json(module_from_json(j)));
      else if (j.contains("e"))
        emitted = json_to_string(rw_module_to_json(rw_module_from_json(j)));
      else if (j.contains("hyperplanes"))
        emitted = json_to_string(arrangement_to_json(arrangement_from_json(j)));
      else
        emitted = json_to_string(j);
      REQUIRE_TRUE(emitted == ss.str());
    }
    REQUIRE_TRUE(run_cli("faces " + data_path("braid_a2.json"), 0,
                         "13 faces, 6 chambers"));
    REQUIRE_TRUE(run_cli("validate " + data_path("constant_braid_a2_module.json"),
                         0, "VALID"));
    REQUIRE_TRUE(run_cli("validate " + data_path("bad_module.json"), 1,
                         "R1 violated at face +-+"));
    REQUIRE_TRUE(run_cli("ic " + data_path("one_hyperplane.json") + " --seed q=2",
                         0, "IC dim 2, i*=0, i!=0"));
    REQUIRE_TRUE(run_cli("faces /nonexistent.json", 2, ""));
    return true;
  });

  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
