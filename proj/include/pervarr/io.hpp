#pragma once
#include <string>

#include <json.hpp>

#include "pervarr/coxeter.hpp"
#include "pervarr/module_core.hpp"
#include "pervarr/recollement.hpp"

namespace pervarr {

using Json = nlohmann::ordered_json;

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);
/// Canonical dump: 2-space indent, trailing newline. Identical values give
/// byte-identical files.
std::string json_to_string(const Json& j);

Json rational_to_json(const Rat& r);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

Json arrangement_to_json(const Arrangement& arr);
Arrangement arrangement_from_json(const Json& j);

Json module_to_json(const RModule& m);
/// Builds the workbench for the embedded arrangement; the module is
/// returned unvalidated.
RModule module_from_json(const Json& j, Exec exec = default_exec);

Json rw_module_to_json(const RWModule& m);
RWModule rw_module_from_json(const Json& j);

std::shared_ptr<const CoxeterSystem> coxeter_from_json(const Json& j);
Json coxeter_to_json(const CoxeterSystem& sys);

Json local_system_to_json(const FacePoset& poset, const LocalSystemRep& ls);

}  // namespace pervarr
