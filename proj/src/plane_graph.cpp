#include "impdimer/plane_graph.hpp"

#include <stdexcept>

namespace impdimer {

const char* role_name(Role r) {
  switch (r) {
    case Role::Primal: return "primal";
    case Role::Dual: return "dual";
    case Role::Terminal: return "terminal";
    case Role::Middle: return "middle";
    case Role::Boundary: return "boundary";
    case Role::Root: return "root";
  }
  return "?";
}

const char* edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::PrimalEdge: return "primal-edge";
    case EdgeKind::DualEdge: return "dual-edge";
    case EdgeKind::DiagonalImpurity: return "diagonal-impurity";
    case EdgeKind::TerminalEdge: return "terminal-edge";
    case EdgeKind::RootEdge: return "root-edge";
  }
  return "?";
}

int PlaneGraph::add_vertex(Role role, int x2, int y2) {
  const int id = static_cast<int>(vertices_.size());
  vertices_.push_back({id, role, x2, y2});
  adj_.emplace_back();
  by_pos_.emplace(std::make_pair(x2, y2), id);
  return id;
}

int PlaneGraph::add_edge(int u, int v, EdgeKind kind, long weight) {
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
    throw std::out_of_range("edge endpoint out of range");
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({id, u, v, kind, weight});
  adj_[u].push_back({id, v});
  adj_[v].push_back({id, u});
  return id;
}

long PlaneGraph::degree(int v) const {
  long d = 0;
  for (auto [e, w] : adj_[v]) d += edges_[e].weight;
  return d;
}

int PlaneGraph::find_vertex_at(int x2, int y2) const {
  auto it = by_pos_.find({x2, y2});
  return it == by_pos_.end() ? -1 : it->second;
}

std::vector<int> PlaneGraph::vertices_with_role(Role r) const {
  std::vector<int> out;
  for (const auto& v : vertices_)
    if (v.role == r) out.push_back(v.id);
  return out;
}

}  // namespace impdimer
