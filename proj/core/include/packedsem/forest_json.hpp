#pragma once

#include <string>
#include <string_view>

#include "packedsem/forest.hpp"

namespace packedsem {

struct ForestFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Forest file format:
///   {"root": id, "nodes": [{"id":.., "kind":"and"|"or"|"leaf",
///    "cat":.., "rule":.., "children":[..], "token":.., "span":[i,j]}]}
std::string forest_to_json(const Forest& f);

/// Parses and structurally checks a forest file; throws
/// ForestFormatError listing every problem found.
Forest forest_from_json(std::string_view text);

/// Graphviz rendering; OR nodes are drawn as boxes.
std::string forest_to_dot(const Forest& f);

}  // namespace packedsem
