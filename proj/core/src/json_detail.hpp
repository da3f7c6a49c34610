#pragma once

// nlohmann/json glue shared by mapping_io.cpp and harness.cpp. Not installed.

#include <nlohmann/json.hpp>

#include "ordfix/mapping.hpp"

namespace ordfix::detail {

using json = nlohmann::json;

Vector vector_from_json(const json& j, std::string_view what);
Matrix matrix_from_json(const json& j, std::string_view what);
json to_json(const Vector& v);
json to_json(const Matrix& m);

MappingSpec mapping_from_json(const json& j);
json mapping_to_json(const MappingSpec& map);

}  // namespace ordfix::detail
