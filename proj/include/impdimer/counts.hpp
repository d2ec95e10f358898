#pragma once

#include <string>
#include <utility>
#include <vector>

#include "impdimer/grid_spec.hpp"
#include "impdimer/rational.hpp"

namespace impdimer {

// Which dual row/region the impurity's dual endpoint occupies.
enum class DualClass { Boundary, NearBoundary, Interior };

// Primal endpoints of the k impurities with their dual-endpoint classes.
struct ImpurityConfig {
  std::vector<Coord> i1;
  std::vector<DualClass> dual_class;  // empty = all Boundary
};

struct CountResult {
  Int value = 0;
  std::string route;  // "cofactor" | "hitting" | "grove"
  // Named parts (A, B, C terms); they sum to value when present.
  std::vector<std::pair<std::string, Int>> decomposition;
};

// M(x) = |K^{-1}(x, t) det K| for the single-impurity grid.
CountResult count_one_impurity(const GridSpec& spec, Coord x);

// Two impurities with both dual endpoints on the dual boundary:
// |det of the 3x3 matrix with rows (a, sum over the arc between a and b,
// b) against terminal columns| * |det K|. Empty arc gives 0.
CountResult count_two_boundary(const GridSpec& spec, Coord a, Coord b);

// First impurity's dual endpoint one step inside the dual boundary (its
// primal endpoint a still on the grid boundary): A(a,b) + B(a,b), where B
// swaps the arc row for the boundary vertex c diagonally adjacent to the
// interior dual endpoint.
CountResult count_two_near_boundary(const GridSpec& spec, Coord a, Coord b);

// k boundary impurities a_1..a_k in anticlockwise boundary order:
// |det of the (2k-1)x(2k-1) matrix with rows (a_1..a_k, arcs between
// consecutive a_j) against terminal columns| * |det K|.
CountResult count_k_boundary(const GridSpec& spec,
                             const std::vector<Coord>& a);

// One-dimensional chain: per-configuration matching count as a sum of
// grove determinants -- the base term A plus one correction C per
// impurity whose dual endpoint sits on the terminal side of the chain.
CountResult count_chain(const GridSpec& spec, const ImpurityConfig& config);

// Same value as count_two_boundary, computed through the random-walk
// hitting matrix H = (I - Q)^{-1} / 4 instead of K^{-1}; an independent
// code path sharing no matrix with the cofactor route.
CountResult hitting_matrix_count(const GridSpec& spec, Coord a, Coord b);

// Resolved: P(I1 = x) = 4 A(x) / (4 Sum A + 2) with a terminal atom
// P(I1 = T) = 2 / (4 Sum A + 2); probabilities sum to 1 and match the
// exhaustive matching census. RawWeight: P(I1 = x) = A(x) / (4 Sum A + 2)
// with no terminal atom (kept for comparison; does not sum to 1).
enum class Normalization { Resolved, RawWeight };

struct DistributionRow {
  Coord site;
  Int weight;              // M(x), exact
  Rational probability;    // per the chosen normalization
};

struct ImpurityDistribution {
  std::vector<DistributionRow> rows;  // row-major site order
  Int det_k = 0;
  Rational terminal_probability = 0;  // atom at I1 = T (Resolved only)
  Normalization normalization = Normalization::Resolved;
};

ImpurityDistribution impurity_distribution(
    const GridSpec& spec, Normalization norm = Normalization::Resolved);

}  // namespace impdimer
