#include "pervarr/io.hpp"

#include <cctype>
#include <fstream>

#include "pervarr/error.hpp"

namespace pervarr {

Rat rat_of_string(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      throw InputError("malformed rational \"" + s + "\"");
  mpq_class r;
  if (r.set_str(s, 10) != 0) throw InputError("malformed rational \"" + s + "\"");
  if (r.get_den() == 0) throw InputError("zero denominator in \"" + s + "\"");
  r.canonicalize();
  return r;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << json_to_string(j);
}

std::string json_to_string(const Json& j) { return j.dump(2) + "\n"; }

Json rational_to_json(const Rat& r) { return rat_to_string(r); }

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(rat_to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw InputError("matrix: expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw InputError("matrix: expected " + std::to_string(cols) + " columns");
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = rat_of_string(row[k].get<std::string>());
  }
  return m;
}

Json arrangement_to_json(const Arrangement& arr) {
  Json j;
  j["dim"] = arr.dim;
  Json hs = Json::array();
  for (const Vec& f : arr.normals) {
    Json row = Json::array();
    for (const Rat& x : f) row.push_back(rat_to_string(x));
    hs.push_back(std::move(row));
  }
  j["hyperplanes"] = std::move(hs);
  return j;
}

Arrangement arrangement_from_json(const Json& j) {
  Arrangement arr;
  if (!j.contains("dim") || !j.contains("hyperplanes"))
    throw InputError("arrangement: need dim and hyperplanes");
  arr.dim = j["dim"].get<std::size_t>();
  for (const Json& row : j["hyperplanes"]) {
    Vec f;
    for (const Json& x : row) f.push_back(rat_of_string(x.get<std::string>()));
    if (f.size() != arr.dim)
      throw InputError("arrangement: normal length != dim");
    arr.normals.push_back(std::move(f));
  }
  validate_arrangement(arr);
  return arr;
}

Json module_to_json(const RModule& m) {
  Json j;
  j["arrangement"] = arrangement_to_json(m.poset().arrangement());
  j["dim"] = m.dim;
  Json actions;
  for (std::size_t c = 0; c < m.poset().size(); ++c)
    actions[m.poset().face_name(c)] = matrix_to_json(m.act[c]);
  j["actions"] = std::move(actions);
  return j;
}

RModule module_from_json(const Json& j, Exec exec) {
  if (!j.contains("arrangement") || !j.contains("dim") || !j.contains("actions"))
    throw InputError("module: need arrangement, dim, actions");
  Arrangement arr = arrangement_from_json(j["arrangement"]);
  Workbench ctx = Workbench::make(arr, exec);
  RModule m;
  m.ctx = ctx;
  m.dim = j["dim"].get<std::size_t>();
  m.act.assign(ctx.poset->size(), Matrix(m.dim, m.dim));
  const Json& actions = j["actions"];
  if (actions.size() != ctx.poset->size())
    throw InputError("module: expected one action per face");
  for (auto it = actions.begin(); it != actions.end(); ++it) {
    std::size_t face = ctx.poset->index_of(sign_vector_of_string(it.key()));
    m.act[face] = matrix_from_json(it.value(), m.dim, m.dim);
  }
  return m;
}

Json coxeter_to_json(const CoxeterSystem& sys) {
  Json j;
  Json rows = Json::array();
  for (std::size_t i = 0; i < sys.rank(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < sys.rank(); ++k)
      row.push_back(sys.coxeter_entry(i, k));
    rows.push_back(std::move(row));
  }
  j["coxeter_matrix"] = std::move(rows);
  return j;
}

std::shared_ptr<const CoxeterSystem> coxeter_from_json(const Json& j) {
  if (j.contains("type"))
    return CoxeterSystem::build_type(j["type"].get<std::string>(),
                                     j["rank"].get<unsigned>());
  const Json& rows = j.contains("coxeter_matrix") ? j["coxeter_matrix"]
                     : j.contains("matrix")       ? j["matrix"]
                                                  : j;
  if (!rows.is_array()) throw InputError("coxeter: need type/rank or a matrix");
  std::vector<std::vector<unsigned>> cox;
  for (const Json& row : rows) {
    std::vector<unsigned> r;
    for (const Json& x : row) r.push_back(x.get<unsigned>());
    cox.push_back(std::move(r));
  }
  return CoxeterSystem::build(cox);
}

Json rw_module_to_json(const RWModule& m) {
  Json j;
  j["coxeter"] = coxeter_to_json(*m.sys);
  j["dim"] = m.dim;
  Json e;
  for (unsigned mask = 0; mask < m.e.size(); ++mask)
    e[std::to_string(mask)] = matrix_to_json(m.e[mask]);
  j["e"] = std::move(e);
  Json s;
  for (std::size_t t = 0; t < m.s.size(); ++t)
    s["s" + std::to_string(t + 1)] = matrix_to_json(m.s[t]);
  j["s"] = std::move(s);
  return j;
}

RWModule rw_module_from_json(const Json& j) {
  if (!j.contains("coxeter") || !j.contains("dim") || !j.contains("e") ||
      !j.contains("s"))
    throw InputError("rw module: need coxeter, dim, e, s");
  RWModule m;
  m.sys = coxeter_from_json(j["coxeter"]);
  m.dim = j["dim"].get<std::size_t>();
  const std::size_t n_masks = std::size_t(1) << m.sys->rank();
  m.e.assign(n_masks, Matrix(m.dim, m.dim));
  m.s.assign(m.sys->rank(), Matrix(m.dim, m.dim));
  const Json& e = j["e"];
  if (e.size() != n_masks)
    throw InputError("rw module: expected one e matrix per subset");
  for (auto it = e.begin(); it != e.end(); ++it) {
    std::size_t mask = std::stoul(it.key());
    if (mask >= n_masks) throw InputError("rw module: bad subset mask");
    m.e[mask] = matrix_from_json(it.value(), m.dim, m.dim);
  }
  const Json& s = j["s"];
  if (s.size() != m.sys->rank())
    throw InputError("rw module: expected one s matrix per generator");
  for (auto it = s.begin(); it != s.end(); ++it) {
    const std::string& key = it.key();
    if (key.size() < 2 || key[0] != 's')
      throw InputError("rw module: generator keys look like s1, s2, ...");
    std::size_t idx = std::stoul(key.substr(1));
    if (idx < 1 || idx > m.sys->rank())
      throw InputError("rw module: generator index out of range");
    m.s[idx - 1] = matrix_from_json(it.value(), m.dim, m.dim);
  }
  return m;
}

Json local_system_to_json(const FacePoset& poset, const LocalSystemRep& ls) {
  Json j;
  j["base"] = poset.face_name(ls.base);
  j["dim"] = ls.dim();
  j["space"] = matrix_to_json(ls.space_basis);
  Json loops = Json::array();
  for (const Word& w : ls.loops) {
    Json word = Json::array();
    for (const Letter& l : w) {
      Json letter;
      letter["src"] = poset.face_name(l.src);
      letter["tgt"] = poset.face_name(l.tgt);
      letter["sign"] = l.positive ? "+" : "-";
      word.push_back(std::move(letter));
    }
    loops.push_back(std::move(word));
  }
  j["loops"] = std::move(loops);
  Json mono = Json::array();
  for (const Matrix& m : ls.monodromy) mono.push_back(matrix_to_json(m));
  j["monodromy"] = std::move(mono);
  return j;
}

}  // namespace pervarr
