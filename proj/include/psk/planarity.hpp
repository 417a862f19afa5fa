#pragma once

#include "psk/graph.hpp"

namespace psk {

bool is_planar(const Graph& g);
/// Planarity of g plus an apex adjacent to every vertex.
bool is_outerplanar(const Graph& g);

}  // namespace psk
