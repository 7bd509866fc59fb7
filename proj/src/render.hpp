#pragma once

#include <string>
#include <utility>

#include "graph.hpp"
#include "partition.hpp"

namespace fw {

enum class RenderFormat { Ppm, Svg };

// Deterministic image of a partition: binary PPM with one cell per
// vertex when the coords form an integer lattice, SVG otherwise.
// Requires coords; byte-identical output per input.
std::pair<RenderFormat, std::string> render_partition_bytes(const Graph& g,
                                                            const PartitionView& p);
RenderFormat render_partition(const Graph& g, const PartitionView& p, const std::string& path);

} // namespace fw
