#include "impdimer/grove.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace impdimer {
namespace {

// Two boundary classes cross iff walking the cycle through their members
// alternates between them more than twice.
bool classes_cross(const std::vector<int>& cycle, const std::set<int>& a,
                   const std::set<int>& b) {
  std::vector<int> seq;
  for (int v : cycle) {
    if (a.count(v)) seq.push_back(0);
    else if (b.count(v)) seq.push_back(1);
  }
  if (seq.size() < 4) return false;
  int transitions = 0;
  for (size_t i = 0; i < seq.size(); ++i)
    if (seq[i] != seq[(i + 1) % seq.size()]) ++transitions;
  return transitions > 2;
}

}  // namespace

CircularGraph assemble_circular(const PlaneGraph& g,
                                const std::vector<std::vector<int>>& identify,
                                const std::vector<int>& nodes,
                                const std::vector<int>& pendant_cycle) {
  if (nodes.empty()) throw std::invalid_argument("empty node list");

  std::vector<int> rep(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) rep[v] = v;
  std::set<int> merged_away;
  for (const auto& cls : identify) {
    if (cls.empty()) continue;
    for (size_t i = 1; i < cls.size(); ++i) {
      if (rep[cls[i]] != cls[i] || merged_away.count(cls[i]))
        throw std::invalid_argument("identification classes must be disjoint");
      rep[cls[i]] = cls[0];
      merged_away.insert(cls[i]);
    }
    if (merged_away.count(cls[0]))
      throw std::invalid_argument("identification classes must be disjoint");
  }
  if (!pendant_cycle.empty()) {
    for (size_t i = 0; i < identify.size(); ++i)
      for (size_t j = i + 1; j < identify.size(); ++j) {
        std::set<int> a(identify[i].begin(), identify[i].end());
        std::set<int> b(identify[j].begin(), identify[j].end());
        if (classes_cross(pendant_cycle, a, b))
          throw std::invalid_argument(
              "crossing identification: classes interleave on the boundary");
      }
  }

  // Merged weighted edges (parallel edges' weights add).
  std::map<std::pair<int, int>, long> acc;
  for (const auto& e : g.edges()) {
    int u = rep[e.u], v = rep[e.v];
    if (u == v) continue;  // merged loop drops out of the Laplacian
    if (u > v) std::swap(u, v);
    acc[{u, v}] += e.weight;
  }

  CircularGraph c;
  c.nodes = nodes;
  std::set<int> node_set(nodes.begin(), nodes.end());
  if (node_set.size() != nodes.size())
    throw std::invalid_argument("duplicate node in node list");
  for (int nd : nodes)
    if (rep[nd] != nd)
      throw std::invalid_argument("node must be a class representative");
  for (int v = 0; v < g.num_vertices(); ++v)
    if (rep[v] == v && !node_set.count(v)) c.interior.push_back(v);

  for (auto& [uv, w] : acc) c.merged_edges.push_back({uv.first, uv.second, w});

  // Laplacian blocks over (nodes | interior).
  std::map<int, long> deg;
  for (auto& [uv, w] : acc) {
    deg[uv.first] += w;
    deg[uv.second] += w;
  }
  c.F = ExactMatrix(c.nodes);
  c.K = ExactMatrix(c.interior);
  ExactMatrix gb(c.nodes), hb(c.interior);
  // G is nodes x interior and H interior x nodes; store them in square
  // holders only if dimensions match -- use dedicated dense blocks instead.
  // (ExactMatrix is square; build G/H as full Laplacian lookups.)
  for (int nd : c.nodes) c.F.at(nd, nd) = deg.count(nd) ? deg[nd] : 0;
  for (int v : c.interior) c.K.at(v, v) = deg.count(v) ? deg[v] : 0;
  for (auto& [uv, w] : acc) {
    auto [u, v] = uv;
    const bool un = node_set.count(u), vn = node_set.count(v);
    if (un && vn) {
      c.F.at(u, v) -= w;
      c.F.at(v, u) -= w;
    } else if (!un && !vn) {
      c.K.at(u, v) -= w;
      c.K.at(v, u) -= w;
    }
  }
  // Off-diagonal blocks are rectangular; ExactMatrix is square, so G and
  // H are materialized inside response_matrix from merged_edges instead.
  c.G_block = ExactMatrix();
  c.H_block = ExactMatrix();
  return c;
}

ExactMatrix response_matrix(const CircularGraph& c) {
  const int nn = static_cast<int>(c.nodes.size());
  const int ni = static_cast<int>(c.interior.size());
  std::map<int, int> node_ix, int_ix;
  for (int i = 0; i < nn; ++i) node_ix[c.nodes[i]] = i;
  for (int i = 0; i < ni; ++i) int_ix[c.interior[i]] = i;

  // G (nodes x interior) from the merged edges: G = -A_{N,I}.
  RationalMatrix G = RationalMatrix::Zero(nn, ni);
  for (auto& [u, v, w] : c.merged_edges) {
    auto nu = node_ix.find(u), nv = node_ix.find(v);
    if (nu != node_ix.end() && nv == node_ix.end())
      G(nu->second, int_ix.at(v)) -= w;
    else if (nu == node_ix.end() && nv != node_ix.end())
      G(nv->second, int_ix.at(u)) -= w;
  }

  ExactMatrix L(c.nodes);
  // Columns of K^{-1} H: H = G^T by symmetry of the Laplacian.
  std::vector<std::vector<Rational>> kinv_h(nn);
  for (int j = 0; j < nn; ++j) {
    std::vector<Rational> rhs(ni);
    for (int i = 0; i < ni; ++i) rhs[i] = G(j, i);
    kinv_h[j] = ni > 0 ? c.K.solve(rhs) : std::vector<Rational>{};
  }
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      Rational s(0);
      for (int t = 0; t < ni; ++t) s += G(i, t) * kinv_h[j][t];
      L.at(c.nodes[i], c.nodes[j]) =
          s - c.F.at(c.nodes[i], c.nodes[j]);
    }
  return L;
}

Rational grove_count_bipartite(const CircularGraph& c,
                               const PartitionSpec& p) {
  // Validate: blocks partition the nodes, size <= 2, non-crossing.
  std::set<int> covered;
  for (const auto& blk : p.blocks) {
    if (blk.empty() || blk.size() > 2)
      throw std::invalid_argument("non-bipartite partition: block size > 2");
    for (int v : blk)
      if (!covered.insert(v).second)
        throw std::invalid_argument("blocks must be disjoint");
  }
  for (int nd : c.nodes)
    if (!covered.count(nd))
      throw std::invalid_argument("blocks must cover every node");
  for (size_t i = 0; i < p.blocks.size(); ++i)
    for (size_t j = i + 1; j < p.blocks.size(); ++j) {
      std::set<int> a(p.blocks[i].begin(), p.blocks[i].end());
      std::set<int> b(p.blocks[j].begin(), p.blocks[j].end());
      if (classes_cross(c.nodes, a, b))
        throw std::invalid_argument("crossing partition");
    }

  auto color_of = [&](int nd) -> const NodeColor* {
    auto it = p.coloring.find(nd);
    return it == p.coloring.end() ? nullptr : &it->second;
  };
  for (const auto& blk : p.blocks) {
    if (blk.size() == 2) {
      const NodeColor* c0 = color_of(blk[0]);
      const NodeColor* c1 = color_of(blk[1]);
      if (!c0 || !c1 || *c0 == NodeColor::Split || *c1 == NodeColor::Split ||
          *c0 == *c1)
        throw std::invalid_argument(
            "non-bipartite partition: pair needs one red and one blue node");
    }
  }

  std::vector<int> red, blue;
  for (int nd : c.nodes) {
    const NodeColor* col = color_of(nd);
    if (!col) continue;  // isolated node
    if (*col == NodeColor::Red || *col == NodeColor::Split)
      red.push_back(nd);
    if (*col == NodeColor::Blue || *col == NodeColor::Split)
      blue.push_back(nd);
  }
  if (red.size() != blue.size())
    throw std::invalid_argument(
        "non-bipartite partition: red/blue counts differ");

  // The determinant formula needs the red side (and hence the blue side)
  // to occupy a contiguous arc of the colored nodes in circular order.
  std::vector<char> red_member, blue_member;
  for (int nd : c.nodes) {
    const NodeColor* col = color_of(nd);
    if (!col) continue;
    red_member.push_back(*col != NodeColor::Blue);
    blue_member.push_back(*col != NodeColor::Red);
  }
  auto cyclic_transitions = [](const std::vector<char>& v) {
    int t = 0;
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != v[(i + 1) % v.size()]) ++t;
    return t;
  };
  if (cyclic_transitions(red_member) > 2 ||
      cyclic_transitions(blue_member) > 2)
    throw std::invalid_argument(
        "non-bipartite coloring: each color must be circularly contiguous");

  ExactMatrix L = response_matrix(c);
  const int d = static_cast<int>(red.size());
  std::vector<int> ix(d);
  for (int i = 0; i < d; ++i) ix[i] = i;
  ExactMatrix sub(ix);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) sub.at(i, j) = L.at(red[i], blue[j]);
  const Rational dk = c.interior.empty() ? Rational(1) : c.K.det();
  return abs(sub.det() * dk);
}

ExactMatrix perturbed_matrix(const ExactMatrix& k, int x) {
  ExactMatrix out = k;
  out.at(x, x) += 1;  // also verifies x is indexed (throws otherwise)
  return out;
}

}  // namespace impdimer
