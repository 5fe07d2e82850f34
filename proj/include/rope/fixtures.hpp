#pragma once

#include <cstdint>

#include "rope/polygon_io.hpp"

namespace rope {

enum class FixtureFamily { convex, monotone, comb };

FixtureFamily fixture_family_from_string(const std::string& name);

// Deterministic integer-coordinate polygon generator. Output passes
// validation; monotone and comb families have x-monotone boundaries. The b
// anchor is the lexicographically largest vertex (a hull vertex, hence
// visible from infinity).
PolygonFile generate_fixture(FixtureFamily family, std::size_t n_vertices, std::uint64_t seed);

}  // namespace rope
