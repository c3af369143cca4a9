#pragma once

#include <cstddef>
#include <vector>

namespace crn {

struct MultiEdge {
    int from = 0;
    int to = 0;
    int id = 0;  // caller payload (reaction index)
};

/// All node-simple directed cycles of a multi-digraph, as sequences of edge
/// indices into `edges`. Self-loops are one-edge cycles; parallel edges give
/// distinct cycles. Each cycle is reported once, rooted at its smallest node.
std::vector<std::vector<int>> simple_cycles(int node_count, const std::vector<MultiEdge>& edges,
                                            std::size_t cap = 1u << 20);

}  // namespace crn
