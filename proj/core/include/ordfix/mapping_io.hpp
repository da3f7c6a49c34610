#pragma once

// Mapping files: JSON documents with a "variant" tag, matrices and vectors as
// arrays, and an optional "domain" block. See docs/mapping-format.md.

#include <filesystem>
#include <string>
#include <string_view>

#include "ordfix/mapping.hpp"

namespace ordfix {

/// Throws ParseError on malformed documents; factory errors (e.g. DomainError
/// for a map that is not a self-map) propagate unchanged.
MappingSpec mapping_from_json_text(std::string_view text);
MappingSpec load_mapping(const std::filesystem::path& path);
std::string mapping_to_json_text(const MappingSpec& map, int indent = 2);

}  // namespace ordfix
