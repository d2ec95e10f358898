#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "impdimer/exact_matrix.hpp"
#include "impdimer/plane_graph.hpp"

namespace impdimer {

// Circular planar graph: boundary nodes in anticlockwise order plus
// interior vertices, with the Laplacian split into blocks
//   [[F, G], [H, K]]  (F: nodes x nodes, K: interior x interior).
struct CircularGraph {
  std::vector<int> nodes;     // anticlockwise circular order
  std::vector<int> interior;
  ExactMatrix F, G_block, H_block, K;
  // Merged weighted edge list (u, v, weight), for exhaustive oracles.
  std::vector<std::tuple<int, int, long>> merged_edges;
};

enum class NodeColor { Red, Blue, Split };

struct PartitionSpec {
  std::vector<std::vector<int>> blocks;   // partition of the node set
  std::map<int, NodeColor> coloring;      // red rows / blue columns
};

// Merge each identification class into its first member and extract the
// Laplacian blocks. `nodes` lists node representatives in circular order.
// Throws on crossing identifications (classes that interleave along the
// pendant cycle, when one is supplied) and on empty node lists.
CircularGraph assemble_circular(const PlaneGraph& g,
                                const std::vector<std::vector<int>>& identify,
                                const std::vector<int>& nodes,
                                const std::vector<int>& pendant_cycle = {});

// L = G K^{-1} H - F, exact; symmetric with zero row sums.
ExactMatrix response_matrix(const CircularGraph& c);

// Z(sigma) = |det L_{R,B}| * |det K| for a bipartite non-crossing
// partition; split nodes appear in both the red rows and blue columns.
Rational grove_count_bipartite(const CircularGraph& c, const PartitionSpec& p);

// K_x: copy of k with 1 added to the (x, x) entry.
ExactMatrix perturbed_matrix(const ExactMatrix& k, int x);

}  // namespace impdimer
