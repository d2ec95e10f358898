#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace impdimer {

enum class Role { Primal, Dual, Terminal, Middle, Boundary, Root };
enum class EdgeKind {
  PrimalEdge,
  DualEdge,
  DiagonalImpurity,
  TerminalEdge,
  RootEdge
};

const char* role_name(Role r);
const char* edge_kind_name(EdgeKind k);

// Positions are stored in doubled units so that half-integer lattice
// coordinates stay exact: primal vertices at even pairs, dual vertices at
// odd pairs, middle/boundary vertices at mixed parity.
struct Vertex {
  int id = -1;
  Role role = Role::Primal;
  int x2 = 0;
  int y2 = 0;
};

struct Edge {
  int id = -1;
  int u = -1;
  int v = -1;
  EdgeKind kind = EdgeKind::PrimalEdge;
  // Integer multiplicity; >1 only for root-edges (degree-4 convention).
  long weight = 1;
};

class PlaneGraph {
 public:
  int add_vertex(Role role, int x2, int y2);
  int add_edge(int u, int v, EdgeKind kind, long weight = 1);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vertex& vertex(int id) const { return vertices_[id]; }
  const Edge& edge(int id) const { return edges_[id]; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  // (edge id, other endpoint) pairs, in edge insertion order.
  const std::vector<std::pair<int, int>>& incident(int v) const {
    return adj_[v];
  }
  // Sum of incident edge weights.
  long degree(int v) const;

  int find_vertex_at(int x2, int y2) const;  // -1 if absent
  std::vector<int> vertices_with_role(Role r) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::map<std::pair<int, int>, int> by_pos_;
};

}  // namespace impdimer
