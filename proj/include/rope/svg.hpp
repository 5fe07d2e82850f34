#pragma once

#include <iosfwd>
#include <string>

#include "rope/solver.hpp"

namespace rope {

// SVG 1.1 rendering of a solved run: polygon boundary (id "domain"), the
// rectangle, the cut, every cutting segment (id "cut-<i>"), the final
// shooting points (id "shoot-<i>") and the final rope (id "rope").
// Byte-identical output for identical inputs.
void render_svg(std::ostream& out, const RopeDomain& d, const Partition& part,
                const SolveResult& result);
void render_svg(const std::string& path, const RopeDomain& d, const Partition& part,
                const SolveResult& result);

}  // namespace rope
