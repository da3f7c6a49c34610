#include <doctest.h>

#include <filesystem>

#include "ordfix/corpus.hpp"
#include "ordfix/error.hpp"
#include "ordfix/mapping_io.hpp"

using namespace ordfix;

namespace {

void check_same_action(const MappingSpec& a, const MappingSpec& b, const std::vector<Vector>& probes) {
  CHECK(a.variant_name() == b.variant_name());
  CHECK(a.domain().kind == b.domain().kind);
  for (const Vector& x : probes) CHECK(apply(a, x) == apply(b, x));
}

}  // namespace

TEST_CASE("mapping JSON round trip") {
  const std::vector<Vector> probes{make_vector({0, 0}), make_vector({1, 2}), make_vector({3, 3})};
  for (const MappingSpec& m : {corpus::affine_contraction(), corpus::translation(), corpus::truncation(),
                               corpus::negative_translation_box(), corpus::order_reversing_box()}) {
    check_same_action(m, mapping_from_json_text(mapping_to_json_text(m)), probes);
  }
  const MappingSpec grid = corpus::alpha_step_grid();
  check_same_action(grid, mapping_from_json_text(mapping_to_json_text(grid, -1)),
                    {make_vector({0, 0}), make_vector({3, 4}), make_vector({5, 5})});
}

TEST_CASE("mapping documents") {
  const MappingSpec m = mapping_from_json_text(R"({"variant": "affine", "A": [[0.5, 0], [0, 0.5]], "b": [1, 1],
                                                  "domain": {"kind": "cone", "cone": "orthant"}})");
  CHECK(m.domain().kind == Domain::Kind::cone);
  CHECK(apply(m, make_vector({2, 2})) == make_vector({2, 2}));
  CHECK(mapping_from_json_text(R"({"variant": "translation", "b": [1]})").domain().kind == Domain::Kind::whole_space);
}

TEST_CASE("malformed mapping documents") {
  CHECK_THROWS_AS(mapping_from_json_text("not json"), ParseError);
  CHECK_THROWS_AS(mapping_from_json_text(R"({"A": [[1]]})"), ParseError);
  CHECK_THROWS_AS(mapping_from_json_text(R"({"variant": "rotation"})"), ParseError);
  CHECK_THROWS_AS(mapping_from_json_text(R"({"variant": "affine", "A": [[1, 0], [0]], "b": [0, 0]})"), ParseError);
  CHECK_THROWS_AS(mapping_from_json_text(R"({"variant": "affine", "A": [[1, 0], [0, 1]], "b": [0, "x"]})"), ParseError);
  CHECK_THROWS_AS(mapping_from_json_text(R"({"variant": "translation", "b": [1], "domain": {"kind": "moon"}})"),
                  ParseError);
  CHECK_THROWS_AS(mapping_from_json_text(R"({"variant": "translation", "b": [-1], "domain": {"kind": "cone"}})"),
                  DomainError);
  CHECK_THROWS_AS(load_mapping("/nonexistent/map.json"), ParseError);
}

TEST_CASE("shipped example mapping files load") {
  const std::filesystem::path dir = ORDFIX_EXAMPLES_DIR;
  int loaded = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    CHECK_NOTHROW(load_mapping(entry.path()));
    ++loaded;
  }
  CHECK(loaded >= 4);
  check_same_action(load_mapping(dir / "alpha_step_grid.json"), corpus::alpha_step_grid(),
                    {make_vector({0, 0}), make_vector({3, 4}), make_vector({4, 5})});
}
