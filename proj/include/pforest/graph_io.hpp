#pragma once

#include <string>

#include "pforest/forest.hpp"

namespace pforest {

// Canonical interchange text: sorted keys, compact separators, coordinates
// as exact [x_num, x_den, y_num, y_den] digit strings. Canonical form makes
// the round-trip byte-identical.
std::string graph_to_json(const GeometricGraph& g);
GeometricGraph graph_from_json(const std::string& text);

void write_graph_file(const GeometricGraph& g, const std::string& path);
GeometricGraph read_graph_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pforest
