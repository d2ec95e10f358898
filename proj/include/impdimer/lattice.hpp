#pragma once

#include <string>
#include <vector>

#include "impdimer/grid_spec.hpp"
#include "impdimer/plane_graph.hpp"

namespace impdimer {

enum class RootedVariant { WithTerminals, TerminalsIdentified };

struct BoundaryArc {
  Coord a, b;
  std::vector<Coord> members;  // strictly between a and b, in arc order
};

// The primal grid G1: primal vertices and primal edges only.
PlaneGraph build_g1(const GridSpec& spec);

// The superposition graph G^(k): primal, dual, terminal, middle and
// boundary vertices with every edge classified by kind.
PlaneGraph build_superposition(const GridSpec& spec);

// WithTerminals: G_{1,T,R} — primal + terminal vertices + root; every
// boundary primal vertex is tied to the root with multiplicity 4 - deg.
// TerminalsIdentified: G_{1,R} — terminals merged into the root; each
// terminal slot is kept as its own unit-weight edge (kind TerminalEdge,
// inserted in terminal order) so downstream code can tell slots apart.
PlaneGraph build_rooted(const GridSpec& spec, RootedVariant variant);

// G1 plus one pendant stub vertex per free boundary slot (role Boundary)
// and the terminal vertices; base graph for circular-graph assembly.
PlaneGraph build_circular_base(const GridSpec& spec);

// Pendant vertices (stubs and terminals) of build_circular_base in
// anticlockwise order around the outer face.
std::vector<int> pendant_cycle(const PlaneGraph& base, const GridSpec& spec);

// Terminal-free arc strictly between a and b; throws if a==b, either is
// not on the boundary, or no terminal-free side exists.
BoundaryArc boundary_arc(const GridSpec& spec, Coord a, Coord b);

// Deterministic plain-text export; header line "impurity-dimer-graph v1".
std::string export_dot(const PlaneGraph& g);
std::string export_json(const PlaneGraph& g);

// Primal vertex id lookup by grid coordinate (valid for every builder
// above: primal ids are assigned row-major first).
int primal_id(const GridSpec& spec, Coord c);
Coord primal_coord(const GridSpec& spec, int id);

}  // namespace impdimer
