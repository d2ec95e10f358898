#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "impdimer/grid_spec.hpp"
#include "impdimer/grove.hpp"
#include "impdimer/plane_graph.hpp"
#include "impdimer/rational.hpp"

namespace impdimer {

// ---- perfect matchings -------------------------------------------------

using Matching = std::vector<int>;  // edge ids, covering every vertex once

// Exhaustive, duplicate-free enumeration; branches on the lowest-id
// uncovered vertex. Odd |V| yields no calls.
void enumerate_matchings(const PlaneGraph& g,
                         const std::function<void(const Matching&)>& cb);
Int count_matchings(const PlaneGraph& g);

// (I1 vertex id, I2 vertex id) per impurity, sorted by I1 id.
using ImpurityKey = std::vector<std::pair<int, int>>;

struct ImpurityTable {
  std::map<ImpurityKey, Int> by_config;
  Int total = 0;
  // Aggregated over I2 choices, keyed by sorted I1 ids.
  std::map<std::vector<int>, Int> by_primal;
};

ImpurityTable count_matchings_by_impurity(const PlaneGraph& gk);

// ---- spanning trees ----------------------------------------------------

// Weighted deletion-contraction; weights are multiplicities. Guarded to
// small graphs (<= 16 vertices). Returns 0 for disconnected input.
Int enumerate_spanning_trees(const PlaneGraph& g);

// ---- constrained spanning forests on G_{1,T,R} --------------------------

// Counts spanning trees of G_{1,T,R} realizing a connection pattern, via
// a frontier dynamic program over the grid (independent of all
// determinant code). Model: cutting the root leaves one component per
// used root slot; each connection pins down one component.
struct ForestPattern {
  struct Connection {
    // Primal vertices that must lie in this component.
    std::vector<Coord> required;
    // Terminals (0-based indices into spec.terminals) hanging inside the
    // component as leaves (their root edge unused).
    std::vector<int> pendant_terminals;
    // Attachment: through this terminal's root edge ...
    int terminal_index = -1;
    // ... or, if terminal_index < 0, through a free slot at one of these.
    std::vector<Coord> arc;
    // Detached components never touch the root: they close with no
    // attachment at all, holding exactly their required vertices and
    // pendant terminals. Incompatible with terminal_index / arc.
    bool detached = false;
  };
  std::vector<Connection> connections;
};

// Empty pattern counts all spanning trees of G_{1,R} (terminal slots act
// as ordinary free slots) and must equal det K.
Int enumerate_constrained_forests(const GridSpec& spec,
                                  const ForestPattern& pattern);

// ---- groves -------------------------------------------------------------

// Exact number of weighted spanning forests of the circular graph whose
// every tree contains a node and whose induced node partition equals p's
// blocks. Guarded to <= 12 vertices.
Int enumerate_groves(const CircularGraph& c, const PartitionSpec& p);

// All groves, keyed by induced partition (blocks sorted canonically).
std::map<std::vector<std::vector<int>>, Int> enumerate_groves_all(
    const CircularGraph& c);

}  // namespace impdimer
