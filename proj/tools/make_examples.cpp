// Regenerates the bundled example files under data/ with the canonical
// emitter, so that parse-then-emit round trips are byte-exact.

#include <iostream>

#include "pervarr/io.hpp"

using namespace pervarr;

namespace {

Arrangement make_arrangement(std::size_t dim, std::vector<std::vector<long>> rows) {
  Arrangement arr;
  arr.dim = dim;
  for (const auto& r : rows) {
    Vec f;
    for (long x : r) f.push_back(rat(x));
    arr.normals.push_back(std::move(f));
  }
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "data";

  Arrangement one_line = make_arrangement(1, {{1}});
  Arrangement boolean2 = make_arrangement(2, {{1, 0}, {0, 1}});
  Arrangement braid_a2 = make_arrangement(2, {{1, 0}, {0, 1}, {1, 1}});
  Arrangement boolean3 = make_arrangement(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});

  save_json_file(dir + "/one_hyperplane.json", arrangement_to_json(one_line));
  save_json_file(dir + "/boolean2.json", arrangement_to_json(boolean2));
  save_json_file(dir + "/braid_a2.json", arrangement_to_json(braid_a2));
  save_json_file(dir + "/boolean3.json", arrangement_to_json(boolean3));

  // Reflection arrangement of the rank-3 symmetric group: 6 planes, 75
  // faces. Bundled as a stress input for the benchmark tool.
  save_json_file(
      dir + "/braid_a3.json",
      arrangement_to_json(
          CoxeterSystem::build_type("A", 3)->poset().arrangement()));

  Workbench line_ctx = Workbench::make(one_line);
  Workbench a2_ctx = Workbench::make(braid_a2);

  Matrix t(1, 1);
  t(0, 0) = rat(2);
  save_json_file(dir + "/one_hyperplane_module_q2.json",
                 module_to_json(one_hyperplane_extension(line_ctx, t)));

  save_json_file(dir + "/constant_braid_a2_module.json",
                 module_to_json(constant_module(a2_ctx, 1)));

  // An invalid module: one chamber idempotent fails R1.
  {
    RModule bad = constant_module(a2_ctx, 1);
    Matrix two(1, 1);
    two(0, 0) = rat(2);
    bad.act[bad.poset().index_of(sign_vector_of_string("+-+"))] = two;
    bad.validated = false;
    save_json_file(dir + "/bad_module.json", module_to_json(bad));
  }

  Json cox_a2;
  cox_a2["type"] = "A";
  cox_a2["rank"] = 2;
  save_json_file(dir + "/coxeter_a2.json", cox_a2);

  auto a2 = CoxeterSystem::build_type("A", 2);
  save_json_file(dir + "/rw_trivial_a2.json",
                 rw_module_to_json(rw_trivial_module(a2, 1)));
  save_json_file(dir + "/rw_sign_a2.json", rw_module_to_json(rw_sign_module(a2)));

  // The A1 seed extension: e_empty of rank one, the reflection swapping the
  // two coordinates.
  {
    auto a1 = CoxeterSystem::build_type("A", 1);
    RWModule seed;
    seed.sys = a1;
    seed.dim = 2;
    Matrix e0(2, 2), swap(2, 2);
    e0(0, 0) = 1;
    e0(0, 1) = 1;
    swap(0, 1) = 1;
    swap(1, 0) = 1;
    seed.e = {e0, Matrix::identity(2)};
    seed.s = {swap};
    ValidationReport rep = validate_rw_module(seed);
    if (!rep.ok()) {
      std::cerr << "rw seed invalid:\n" << rep.to_string();
      return 1;
    }
    save_json_file(dir + "/rw_seed_a1.json", rw_module_to_json(seed));
  }

  {
    Json sym;
    Json elems = Json::array();
    Matrix shear(2, 2);
    shear(0, 0) = 1;
    shear(0, 1) = 1;
    shear(1, 1) = 1;
    elems.push_back(matrix_to_json(shear));
    elems.push_back(matrix_to_json(Matrix::identity(2)));
    sym["elements"] = std::move(elems);
    sym["coeffs"] = Json::array({"1", "-1"});
    sym["k_max"] = 3;
    save_json_file(dir + "/symsep_example.json", sym);
  }

  std::cout << "wrote example files to " << dir << "\n";
  return 0;
}
