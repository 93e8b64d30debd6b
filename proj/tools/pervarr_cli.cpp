// Command-line front end: load arrangements and modules, run the face,
// Salvetti, validation, recollement, IC, Coxeter and symmetric-power
// computations, and emit deterministic text or JSON reports.
//
// Exit codes: 0 success, 1 validation failure, 2 input error.

#include <iostream>
#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pervarr/error.hpp"
#include "pervarr/io.hpp"
#include "pervarr/sympow.hpp"

using namespace pervarr;

namespace {

struct Options {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

void emit(const Options& opt, const Json& j, const std::string& text) {
  if (opt.json())
    std::cout << json_to_string(j);
  else
    std::cout << text;
}

// Sign strings may start with '-' or read "++", which the option parser
// would misread; main() shields such tokens with a leading '@' that is
// stripped here.
SignVector face_arg(const std::string& s) {
  return sign_vector_of_string(s.starts_with("@") ? s.substr(1) : s);
}

std::vector<std::size_t> parse_indices(const std::string& arg) {
  std::string csv = arg.starts_with("@") ? arg.substr(1) : arg;
  std::vector<std::size_t> out;
  if (csv.empty()) return out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
  return out;
}

int cmd_faces(const std::string& path, const Options& opt) {
  FacePoset poset = enumerate_faces(arrangement_from_json(load_json_file(path)));
  Json j;
  j["faces"] = poset.size();
  j["chambers"] = poset.chambers().size();
  Json list = Json::array();
  std::ostringstream text;
  text << poset.size() << " faces, " << poset.chambers().size() << " chambers\n";
  for (std::size_t i = 0; i < poset.size(); ++i) {
    Json f;
    f["signs"] = poset.face_name(i);
    f["codim"] = poset.face(i).codim;
    Json w = Json::array();
    for (const Rat& x : poset.face(i).witness) w.push_back(rat_to_string(x));
    f["witness"] = std::move(w);
    list.push_back(std::move(f));
    text << poset.face_name(i) << " codim " << poset.face(i).codim << "\n";
  }
  j["list"] = std::move(list);
  emit(opt, j, text.str());
  return 0;
}

int cmd_poset(const std::string& path, const Options& opt) {
  FacePoset poset = enumerate_faces(arrangement_from_json(load_json_file(path)));
  Json j;
  j["faces"] = poset.size();
  Json pairs = Json::array();
  std::ostringstream text;
  text << poset.size() << " faces, " << poset.chambers().size() << " chambers\n";
  for (std::size_t a = 0; a < poset.size(); ++a)
    for (std::size_t b = 0; b < poset.size(); ++b)
      if (a != b && poset.leq(a, b)) {
        pairs.push_back(Json::array({poset.face_name(a), poset.face_name(b)}));
        text << poset.face_name(a) << " <= " << poset.face_name(b) << "\n";
      }
  j["order"] = std::move(pairs);
  emit(opt, j, text.str());
  return 0;
}

int cmd_collinear(const std::string& path, const std::string& a,
                  const std::string& b, const std::string& c,
                  const Options& opt) {
  FacePoset poset = enumerate_faces(arrangement_from_json(load_json_file(path)));
  bool res = collinear(poset, poset.index_of(face_arg(a)),
                       poset.index_of(face_arg(b)),
                       poset.index_of(face_arg(c)));
  Json j;
  j["collinear"] = res;
  emit(opt, j, std::string(res ? "true" : "false") + "\n");
  return 0;
}

int cmd_salvetti(const std::string& path, const std::string& base,
                 const Options& opt) {
  FacePoset poset = enumerate_faces(arrangement_from_json(load_json_file(path)));
  std::size_t b = base.empty() ? poset.chambers().front()
                               : poset.index_of(face_arg(base));
  Presentation pres = salvetti_presentation(poset, b);
  Json j;
  j["base"] = poset.face_name(pres.base);
  j["generators"] = pres.generators.size();
  j["relations"] = pres.relations.size();
  j["pi1_generators"] = pres.pi1_generators.size();
  Json gens = Json::array();
  for (const auto& [x, y] : pres.generators)
    gens.push_back(Json::array({poset.face_name(x), poset.face_name(y)}));
  j["generator_list"] = std::move(gens);
  Json rels = Json::array();
  for (const auto& rel : pres.relations)
    rels.push_back(Json::array(
        {word_to_text(poset, rel.lhs), word_to_text(poset, rel.rhs)}));
  j["relation_list"] = std::move(rels);
  Json loops = Json::array();
  for (const Word& w : pres.pi1_generators) loops.push_back(word_to_text(poset, w));
  j["pi1_list"] = std::move(loops);
  emit(opt, j, presentation_to_text(poset, pres));
  return 0;
}

int report_validation(const ValidationReport& rep, const Options& opt) {
  Json j;
  j["valid"] = rep.ok();
  j["violations"] = rep.violations;
  std::ostringstream text;
  for (const auto& v : rep.violations) text << v << "\n";
  text << (rep.ok() ? "VALID" : "INVALID") << "\n";
  emit(opt, j, text.str());
  return rep.ok() ? 0 : 1;
}

int cmd_validate(const std::string& path, const Options& opt) {
  Json j = load_json_file(path);
  if (j.contains("coxeter")) {
    RWModule m = rw_module_from_json(j);
    return report_validation(validate_rw_module(m), opt);
  }
  RModule m = module_from_json(j);
  return report_validation(validate_module(m), opt);
}

int cmd_restrict(const std::string& path, const std::string& base,
                 const Options& opt) {
  RModule m = module_from_json(load_json_file(path));
  ValidationReport rep = validate_module(m);
  if (!rep.ok()) return report_validation(rep, opt);
  std::size_t b = base.empty()
                      ? m.poset().chambers().front()
                      : m.poset().index_of(face_arg(base));
  LocalSystemRep ls = j_restrict(m, b);
  Json j = local_system_to_json(m.poset(), ls);
  std::ostringstream text;
  text << "base " << m.poset().face_name(ls.base) << "\n";
  text << "dim " << ls.dim() << "\n";
  for (std::size_t g = 0; g < ls.loops.size(); ++g)
    text << "loop " << word_to_text(m.poset(), ls.loops[g]) << " -> "
         << Json(matrix_to_json(ls.monodromy[g])).dump() << "\n";
  emit(opt, j, text.str());
  return 0;
}

int cmd_support(const std::string& path, const Options& opt) {
  RModule m = module_from_json(load_json_file(path));
  ValidationReport rep = validate_module(m);
  if (!rep.ok()) return report_validation(rep, opt);
  SupportReport sup = support(m);
  Json j;
  Json faces = Json::array();
  std::ostringstream text;
  for (std::size_t c : sup.support_faces) faces.push_back(m.poset().face_name(c));
  j["support"] = std::move(faces);
  j["closed"] = sup.closed;
  Json flats = Json::array();
  for (const Flat& f : sup.maximal_flats) {
    Json hs = Json::array();
    for (std::size_t h : f.hyperplanes) hs.push_back(h);
    flats.push_back(std::move(hs));
  }
  j["maximal_flats"] = std::move(flats);
  text << "support:";
  for (std::size_t c : sup.support_faces) text << " " << m.poset().face_name(c);
  text << "\nclosed: " << (sup.closed ? "yes" : "no") << "\n";
  text << "maximal flats: " << sup.maximal_flats.size() << "\n";
  emit(opt, j, text.str());
  return 0;
}

int cmd_ic(const std::string& path, const std::string& seed,
           const std::string& seed_file, const std::string& flat_csv,
           const std::string& base, const Options& opt) {
  Arrangement arr = arrangement_from_json(load_json_file(path));
  Workbench ctx = Workbench::make(arr);
  Flat flat = flat_from(arr, parse_indices(flat_csv));
  Restriction restr = flats_and_restriction(*ctx.poset, flat);

  Workbench rctx = Workbench::make(restr.poset_z);
  RModule seed_module;
  if (!seed_file.empty()) {
    seed_module = module_from_json(load_json_file(seed_file));
    if (!(seed_module.poset().arrangement().normals == restr.restricted.normals))
      throw InputError("seed module does not live on the restricted arrangement");
    ValidationReport rep = validate_module(seed_module);
    if (!rep.ok()) return report_validation(rep, opt);
  } else {
    std::string q = seed;
    if (q.rfind("q=", 0) == 0) q = q.substr(2);
    if (q.empty()) throw InputError("need --seed q=VALUE or --seed-file");
    Matrix t(1, 1);
    t(0, 0) = rat_of_string(q);
    seed_module = one_hyperplane_extension(rctx, t);
  }

  std::size_t chamber_b =
      base.empty() ? restr.to_ambient[restr.poset_z.chambers().front()]
                   : ctx.poset->index_of(face_arg(base));
  RModule ic = ic_on_stratum(ctx, restr, seed_module, chamber_b);

  std::size_t t_dim = t_submodule(ic, chamber_b).dim();
  std::size_t n_dim = n_submodule(ic, chamber_b).dim();
  SupportReport sup = support(ic);

  // Open monodromy along the transported loops of the stratum.
  std::size_t bz = restr.from_ambient.at(chamber_b);
  Presentation pz = salvetti_presentation(restr.poset_z, bz);
  Matrix basis = image_basis(ic.act[chamber_b]).basis_matrix();
  Json mono = Json::array();
  for (const Word& w : pz.pi1_generators) {
    Matrix amb = evaluate_word(ic, map_word(restr, w)) * basis;
    mono.push_back(matrix_to_json(solve(basis, amb)));
  }

  Json j;
  j["dim"] = ic.dim;
  j["i_star_dim"] = ic.dim - t_dim;
  j["i_shriek_dim"] = n_dim;
  Json faces = Json::array();
  for (std::size_t c : sup.support_faces) faces.push_back(ic.poset().face_name(c));
  j["support"] = std::move(faces);
  j["monodromy"] = std::move(mono);
  std::ostringstream text;
  text << "IC dim " << ic.dim << ", i*=" << (ic.dim - t_dim)
       << ", i!=" << n_dim << "\n";
  text << "support:";
  for (std::size_t c : sup.support_faces) text << " " << ic.poset().face_name(c);
  text << "\nmonodromy " << j["monodromy"].dump() << "\n";
  emit(opt, j, text.str());
  return 0;
}

int cmd_coxeter(const std::string& path, const Options& opt) {
  Json in = load_json_file(path);
  if (in.contains("coxeter") && in.contains("e")) {
    RWModule m = rw_module_from_json(in);
    ValidationReport rep = validate_rw_module(m);
    if (!rep.ok()) return report_validation(rep, opt);
    BraidRep braid = braid_restrict(m);
    Json j;
    j["order"] = m.sys->order();
    j["dim"] = m.dim;
    j["valid"] = true;
    j["braid_dim"] = braid.dim();
    Json sig = Json::array();
    for (const Matrix& s : braid.sigma) sig.push_back(matrix_to_json(s));
    j["braid"] = std::move(sig);
    std::ostringstream text;
    text << "group order " << m.sys->order() << "\n";
    text << "module dim " << m.dim << " VALID\n";
    text << "braid restriction dim " << braid.dim() << "\n";
    for (std::size_t t = 0; t < braid.sigma.size(); ++t)
      text << "sigma s" << t + 1 << " = "
           << Json(matrix_to_json(braid.sigma[t])).dump() << "\n";
    emit(opt, j, text.str());
    return 0;
  }
  auto sys = coxeter_from_json(in.contains("coxeter") ? in["coxeter"] : in);
  Json j;
  j["order"] = sys->order();
  j["reflections"] = sys->poset().arrangement().normals.size();
  j["faces"] = sys->poset().size();
  j["chambers"] = sys->poset().chambers().size();
  j["lambda"] = sys->n_subsets();
  Json lam;
  for (unsigned mask = 0; mask < sys->n_subsets(); ++mask)
    lam[std::to_string(mask)] = sys->poset().face_name(sys->lambda_face(mask));
  j["lambda_faces"] = std::move(lam);

  // Chambers carry the reduced word of the group element moving the
  // fundamental chamber onto them.
  auto reduced_word = [&](std::size_t w) {
    if (sys->word(w).empty()) return std::string("e");
    std::string out;
    for (unsigned letter : sys->word(w)) {
      if (!out.empty()) out += " ";
      out += "s" + std::to_string(letter + 1);
    }
    return out;
  };
  Json chambers;
  std::ostringstream chamber_text;
  for (std::size_t w = 0; w < sys->order(); ++w) {
    std::size_t c = sys->face_action(w, sys->fundamental_chamber());
    std::string name = sys->poset().face_name(c);
    if (!chambers.contains(name)) {
      chambers[name] = reduced_word(w);
      chamber_text << "chamber " << name << " = " << reduced_word(w)
                   << " . fundamental\n";
    }
  }
  j["chamber_words"] = std::move(chambers);

  std::ostringstream text;
  text << "group order " << sys->order() << "\n";
  text << sys->poset().arrangement().normals.size() << " reflections, "
       << sys->poset().size() << " faces, "
       << sys->poset().chambers().size() << " chambers\n";
  text << "lambda size " << sys->n_subsets() << "\n";
  for (unsigned mask = 0; mask < sys->n_subsets(); ++mask)
    text << "C_" << mask << " = "
         << sys->poset().face_name(sys->lambda_face(mask)) << "\n";
  text << chamber_text.str();
  emit(opt, j, text.str());
  return 0;
}

int cmd_symsep(const std::string& path, const Options& opt) {
  Json in = load_json_file(path);
  if (!in.contains("elements") || !in.contains("coeffs"))
    throw InputError("symsep: need elements and coeffs");
  std::vector<Matrix> elems;
  for (const Json& jm : in["elements"]) {
    std::size_t r = jm.size();
    elems.push_back(matrix_from_json(jm, r, r == 0 ? 0 : jm[0].size()));
  }
  std::vector<Rat> coeffs;
  for (const Json& c : in["coeffs"])
    coeffs.push_back(rat_of_string(c.get<std::string>()));
  unsigned k_max = in.value("k_max", 5u);
  auto k = sym_separation(elems, coeffs, k_max);
  Json j;
  if (k)
    j["k"] = *k;
  else
    j["k"] = nullptr;
  emit(opt, j, k ? ("k = " + std::to_string(*k) + "\n") : "none\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for hyperplane arrangement face posets and "
               "their module categories"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string path, face_a, face_b, face_c, base, seed, seed_file, flat_csv;

  auto* faces = app.add_subcommand("faces", "enumerate the face poset");
  faces->add_option("file", path)->required();

  auto* poset = app.add_subcommand("poset", "faces with the closure order");
  poset->add_option("file", path)->required();

  auto* col = app.add_subcommand("collinear", "decide a collinear triple");
  col->add_option("file", path)->required();
  col->add_option("A", face_a)->required();
  col->add_option("B", face_b)->required();
  col->add_option("C", face_c)->required();

  auto* sal = app.add_subcommand("salvetti", "fundamental groupoid presentation");
  sal->add_option("file", path)->required();
  sal->add_option("--base", base, "base chamber sign string");

  auto* val = app.add_subcommand("validate", "check the algebra relations");
  val->add_option("file", path)->required();

  auto* res = app.add_subcommand("restrict", "local system on the open stratum");
  res->add_option("file", path)->required();
  res->add_option("--base", base, "base chamber sign string");

  auto* sup = app.add_subcommand("support", "support of a module");
  sup->add_option("file", path)->required();

  auto* ic = app.add_subcommand("ic", "intersection cohomology module");
  ic->add_option("file", path)->required();
  ic->add_option("--seed", seed, "q=VALUE monodromy for the canonical seed");
  ic->add_option("--seed-file", seed_file, "module file over the restriction");
  ic->add_option("--flat", flat_csv, "comma-separated hyperplane indices");
  ic->add_option("--base", base, "maximal face of C_Z (ambient signs)");

  auto* cox = app.add_subcommand("coxeter", "Coxeter system / equivariant module");
  cox->add_option("file", path)->required();

  auto* sym = app.add_subcommand("symsep", "symmetric power separation");
  sym->add_option("file", path)->required();

  // Shield sign-string tokens (e.g. "-+", "++") from option classification.
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string tok = argv[i];
    bool signish = !tok.empty() && tok.find_first_not_of("+-0") == std::string::npos;
    args.push_back(signish ? "@" + tok : tok);
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (faces->parsed()) return cmd_faces(path, opt);
    if (poset->parsed()) return cmd_poset(path, opt);
    if (col->parsed()) return cmd_collinear(path, face_a, face_b, face_c, opt);
    if (sal->parsed()) return cmd_salvetti(path, base, opt);
    if (val->parsed()) return cmd_validate(path, opt);
    if (res->parsed()) return cmd_restrict(path, base, opt);
    if (sup->parsed()) return cmd_support(path, opt);
    if (ic->parsed()) return cmd_ic(path, seed, seed_file, flat_csv, base, opt);
    if (cox->parsed()) return cmd_coxeter(path, opt);
    if (sym->parsed()) return cmd_symsep(path, opt);
  } catch (const ValidationFailedError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const InvalidModuleError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
