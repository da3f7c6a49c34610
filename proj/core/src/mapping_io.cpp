#include "ordfix/mapping_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json_detail.hpp"
#include "ordfix/error.hpp"

namespace ordfix {
namespace detail {

Vector vector_from_json(const json& j, std::string_view what) {
  if (!j.is_array()) throw ParseError(fmt::format("{}: expected an array of numbers", what));
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(fmt::format("{}[{}]: expected a number", what, i));
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Matrix matrix_from_json(const json& j, std::string_view what) {
  if (!j.is_array() || j.empty()) throw ParseError(fmt::format("{}: expected a non-empty array of rows", what));
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vector row = vector_from_json(j[r], fmt::format("{}[{}]", what, r));
    if (static_cast<std::size_t>(row.size()) != cols) throw ParseError(fmt::format("{}: ragged rows", what));
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Vector(m.row(r).transpose())));
  return out;
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(fmt::format("mapping: missing field '{}'", key));
  return j.at(key);
}

Domain domain_from_json(const json& j, int dim) {
  const std::string kind = j.value("kind", "space");
  if (kind == "space") return Domain::whole_space();
  if (kind == "cone") return Domain::of_cone(ConeSpec(parse_cone_kind(j.value("cone", "orthant")), dim));
  if (kind == "box") return Domain::box(vector_from_json(field(j, "lo"), "domain.lo"), vector_from_json(field(j, "hi"), "domain.hi"));
  if (kind == "order_interval") {
    return Domain::order_interval(ConeSpec(parse_cone_kind(j.value("cone", "orthant")), dim),
                                  vector_from_json(field(j, "lo"), "domain.lo"),
                                  vector_from_json(field(j, "hi"), "domain.hi"));
  }
  throw ParseError(fmt::format("mapping: unknown domain kind '{}'", kind));
}

json domain_to_json(const Domain& d) {
  json out;
  out["kind"] = std::string(to_string(d.kind));
  if (d.cone) out["cone"] = std::string(to_string(d.cone->kind()));
  if (d.kind == Domain::Kind::box || d.kind == Domain::Kind::order_interval) {
    out["lo"] = to_json(d.lo);
    out["hi"] = to_json(d.hi);
  }
  return out;
}

Domain domain_or_default(const json& j, int dim) {
  return j.contains("domain") ? domain_from_json(j.at("domain"), dim) : Domain::whole_space();
}

}  // namespace

MappingSpec mapping_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("mapping: expected a JSON object");
  const std::string variant = field(j, "variant").get<std::string>();
  if (variant == "affine") {
    Matrix A = matrix_from_json(field(j, "A"), "A");
    Vector b = vector_from_json(field(j, "b"), "b");
    const int dim = static_cast<int>(b.size());
    return MappingSpec::affine(std::move(A), std::move(b), domain_or_default(j, dim));
  }
  if (variant == "truncation") {
    Vector c = vector_from_json(field(j, "c"), "c");
    const int dim = static_cast<int>(c.size());
    return MappingSpec::truncation(std::move(c), domain_or_default(j, dim));
  }
  if (variant == "translation") {
    Vector b = vector_from_json(field(j, "b"), "b");
    const int dim = static_cast<int>(b.size());
    return MappingSpec::translation(std::move(b), domain_or_default(j, dim));
  }
  if (variant == "box_projection") {
    Vector lo = vector_from_json(field(j, "lo"), "lo");
    Vector hi = vector_from_json(field(j, "hi"), "hi");
    const int dim = static_cast<int>(lo.size());
    return MappingSpec::box_projection(std::move(lo), std::move(hi), domain_or_default(j, dim));
  }
  if (variant == "composition") {
    const json& parts_json = field(j, "maps");
    if (!parts_json.is_array()) throw ParseError("composition: 'maps' must be an array");
    std::vector<MappingSpec> parts;
    for (const json& p : parts_json) parts.push_back(mapping_from_json(p));
    const int dim = parts.empty() ? 0 : parts.front().dim();
    return MappingSpec::composition(std::move(parts), domain_or_default(j, dim));
  }
  if (variant == "grid_defined") {
    GridTable table;
    table.origin = vector_from_json(field(j, "origin"), "origin");
    const json& shape = field(j, "shape");
    if (!shape.is_array()) throw ParseError("grid_defined: 'shape' must be an array");
    for (const json& n : shape) table.shape.push_back(n.get<int>());
    const json& step = field(j, "step");
    table.step = step.is_number() ? Vector::Constant(table.origin.size(), step.get<double>())
                                  : vector_from_json(step, "step");
    const json& values = field(j, "values");
    if (!values.is_array()) throw ParseError("grid_defined: 'values' must be an array");
    for (std::size_t i = 0; i < values.size(); ++i) {
      table.values.push_back(vector_from_json(values[i], fmt::format("values[{}]", i)));
    }
    return MappingSpec::grid_defined(std::move(table));
  }
  throw ParseError(fmt::format("mapping: unknown variant '{}'", variant));
}

json mapping_to_json(const MappingSpec& map) {
  json out;
  out["variant"] = std::string(map.variant_name());
  std::visit(
      [&out](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, maps::Affine>) {
          out["A"] = to_json(m.A);
          out["b"] = to_json(m.b);
        } else if constexpr (std::is_same_v<M, maps::Truncation>) {
          out["c"] = to_json(m.c);
        } else if constexpr (std::is_same_v<M, maps::Translation>) {
          out["b"] = to_json(m.b);
        } else if constexpr (std::is_same_v<M, maps::BoxProjection>) {
          out["lo"] = to_json(m.lo);
          out["hi"] = to_json(m.hi);
        } else if constexpr (std::is_same_v<M, maps::Composition>) {
          json parts = json::array();
          for (const MappingSpec& part : m.maps) parts.push_back(mapping_to_json(part));
          out["maps"] = std::move(parts);
        } else {
          out["origin"] = to_json(m.table.origin);
          out["step"] = to_json(m.table.step);
          out["shape"] = m.table.shape;
          json values = json::array();
          for (const Vector& v : m.table.values) values.push_back(to_json(v));
          out["values"] = std::move(values);
        }
      },
      map.variant());
  if (map.domain().kind != Domain::Kind::lattice) out["domain"] = domain_to_json(map.domain());
  return out;
}

}  // namespace detail

MappingSpec mapping_from_json_text(std::string_view text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const detail::json::exception& e) {
    throw ParseError(fmt::format("mapping: invalid JSON: {}", e.what()));
  }
  try {
    return detail::mapping_from_json(j);
  } catch (const detail::json::exception& e) {
    throw ParseError(fmt::format("mapping: {}", e.what()));
  }
}

MappingSpec load_mapping(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("cannot open mapping file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return mapping_from_json_text(buf.str());
}

std::string mapping_to_json_text(const MappingSpec& map, int indent) {
  return detail::mapping_to_json(map).dump(indent);
}

}  // namespace ordfix
