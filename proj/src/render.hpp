#pragma once

#include <stdexcept>
#include <string>

#include "model.hpp"

namespace qs {

struct RenderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Static SVG 1.1 picture of a witness: circles, rectangles (polygons from the
// corner/frame parameters), segments, and labeled points, in declaration
// order. 3D objects render as their xy projection. The viewBox fits all
// geometry with a 10% margin. Output is deterministic for a given witness.
// Throws RenderError on missing or non-finite positional values.
std::string render_svg(const ConstraintGraph& g, const Assignment& witness);

void render_svg_file(const ConstraintGraph& g, const Assignment& witness,
                     const std::string& path);

}  // namespace qs
