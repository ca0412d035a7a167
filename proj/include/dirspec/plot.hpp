#pragma once

#include <string>

#include "dirspec/engine.hpp"

namespace dirspec {

// Deterministic SVG of the plane geometry at one step: for constructed
// steps the tangency-plane picture (section ellipse, dilated ellipse,
// hyperbola-region boundaries, lattice rows, the search segment, and the
// accepted candidate's tangency point); for seed steps the cylinder profile
// with its lattice points.  All coordinates go through exact rationals and
// fixed-precision decimal printing, so identical inputs give identical
// bytes.
std::string render_step_svg(const ConstructionState& st, int nu, const Int& enum_limit);

}  // namespace dirspec
