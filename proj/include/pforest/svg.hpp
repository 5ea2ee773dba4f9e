#pragma once

#include <string>
#include <vector>

#include "pforest/corridor.hpp"
#include "pforest/forest.hpp"

namespace pforest {

enum class LayerStyle { Primal, Dual, Contour, Iso };

struct RenderLayer {
  GeometricGraph graph;
  LayerStyle style = LayerStyle::Primal;
};

struct RenderDoc {
  std::vector<RenderLayer> layers;
  std::vector<Door> doors;  // door segments highlighted, corridor band hatched
  Box viewport;
};

// Deterministic layered SVG: fixed layer order, fixed element order within a
// layer, styles per layer (primal solid black, dual dotted gray, contour
// red, doors highlighted over a hatched corridor band).
std::string render_svg(const RenderDoc& doc);

}  // namespace pforest
