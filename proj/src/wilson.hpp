#pragma once

#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace fw {

// Uniform spanning tree of G[subset] by loop-erased random walks, rooted
// at the minimum vertex of the subset. Returns sorted host edge indices.
std::vector<int> sample_ust(const Graph& g, const std::vector<int>& subset, Pcg32& rng);

} // namespace fw
