#include "impdimer/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace impdimer {
namespace {

constexpr Dir kDirs[4] = {Dir::N, Dir::E, Dir::S, Dir::W};

void add_primal_vertices(PlaneGraph& g, const GridSpec& spec) {
  for (int y = 1; y <= spec.height(); ++y)
    for (int x = 1; x <= spec.width(); ++x)
      g.add_vertex(Role::Primal, 2 * x, 2 * y);
}

std::string coord_text(int doubled) {
  std::string s = std::to_string(doubled / 2);
  return (doubled % 2 == 0) ? s + ".0"
                            : std::to_string((doubled - 1) / 2) + ".5";
}

}  // namespace

int primal_id(const GridSpec& spec, Coord c) {
  if (!spec.contains(c)) throw std::out_of_range("coordinate outside grid");
  return (c.y - 1) * spec.width() + (c.x - 1);
}

Coord primal_coord(const GridSpec& spec, int id) {
  return {id % spec.width() + 1, id / spec.width() + 1};
}

PlaneGraph build_g1(const GridSpec& spec) {
  spec.validate();
  PlaneGraph g;
  add_primal_vertices(g, spec);
  for (int y = 1; y <= spec.height(); ++y)
    for (int x = 1; x <= spec.width(); ++x) {
      if (x < spec.width())
        g.add_edge(primal_id(spec, {x, y}), primal_id(spec, {x + 1, y}),
                   EdgeKind::PrimalEdge);
      if (y < spec.height())
        g.add_edge(primal_id(spec, {x, y}), primal_id(spec, {x, y + 1}),
                   EdgeKind::PrimalEdge);
    }
  return g;
}

PlaneGraph build_superposition(const GridSpec& spec) {
  spec.validate();
  const int w = spec.width(), h = spec.height();
  PlaneGraph g;
  add_primal_vertices(g, spec);

  // Dual grid (n+1) x (m+1); vertex (x+1/2, y+1/2) for 0 <= x <= n, 0 <= y <= m.
  auto dual_id = [&](int x, int y) {
    return g.find_vertex_at(2 * x + 1, 2 * y + 1);
  };
  for (int y = 0; y <= h; ++y)
    for (int x = 0; x <= w; ++x) g.add_vertex(Role::Dual, 2 * x + 1, 2 * y + 1);

  // Primal edges split by a middle vertex.
  for (int y = 1; y <= h; ++y)
    for (int x = 1; x <= w; ++x)
      for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}}) {
        if (!spec.contains({x + dx, y + dy})) continue;
        const int mid = g.add_vertex(Role::Middle, 2 * x + dx, 2 * y + dy);
        g.add_edge(primal_id(spec, {x, y}), mid, EdgeKind::PrimalEdge);
        g.add_edge(mid, primal_id(spec, {x + dx, y + dy}),
                   EdgeKind::PrimalEdge);
      }

  // Terminals: site --(middle)-- T, both halves of kind terminal-edge.
  struct TermInfo {
    int id;
    int dx, dy;  // outward unit direction
  };
  std::vector<TermInfo> terms;
  for (const auto& t : spec.terminals) {
    const int dx = dir_dx(t.dir), dy = dir_dy(t.dir);
    const int mx = 2 * t.site.x + dx, my = 2 * t.site.y + dy;
    if (g.find_vertex_at(mx, my) != -1)
      throw std::invalid_argument("terminal placements collide");
    const int mid = g.add_vertex(Role::Middle, mx, my);
    const int T = g.add_vertex(Role::Terminal, 2 * t.site.x + 2 * dx,
                               2 * t.site.y + 2 * dy);
    g.add_edge(primal_id(spec, t.site), mid, EdgeKind::TerminalEdge);
    g.add_edge(mid, T, EdgeKind::TerminalEdge);
    terms.push_back({T, dx, dy});
  }

  // One boundary stub per remaining free slot of each boundary vertex.
  for (int y = 1; y <= h; ++y)
    for (int x = 1; x <= w; ++x)
      for (Dir d : kDirs) {
        if (!spec.points_outward({x, y}, d)) continue;
        const int px = 2 * x + dir_dx(d), py = 2 * y + dir_dy(d);
        if (g.find_vertex_at(px, py) != -1) continue;  // terminal middle
        const int stub = g.add_vertex(Role::Boundary, px, py);
        g.add_edge(primal_id(spec, {x, y}), stub, EdgeKind::PrimalEdge);
      }

  // Dual edges, split wherever a middle/stub vertex sits at the midpoint.
  for (int y = 0; y <= h; ++y)
    for (int x = 0; x <= w; ++x)
      for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}}) {
        if (x + dx > w || y + dy > h) continue;
        const int u = dual_id(x, y), v = dual_id(x + dx, y + dy);
        const int mid = g.find_vertex_at(2 * x + 1 + dx, 2 * y + 1 + dy);
        if (mid == -1) {
          g.add_edge(u, v, EdgeKind::DualEdge);
        } else {
          g.add_edge(u, mid, EdgeKind::DualEdge);
          g.add_edge(mid, v, EdgeKind::DualEdge);
        }
      }

  // Diagonal edges: every primal vertex to the four corners of its dual
  // square; every terminal to the two dual vertices on its grid side.
  for (int y = 1; y <= h; ++y)
    for (int x = 1; x <= w; ++x)
      for (int sx : {0, -1})
        for (int sy : {0, -1})
          g.add_edge(primal_id(spec, {x, y}), dual_id(x + sx, y + sy),
                     EdgeKind::DiagonalImpurity);
  for (const auto& t : terms) {
    const auto& tv = g.vertex(t.id);
    const int px = t.dy != 0 ? 1 : 0, py = t.dx != 0 ? 1 : 0;
    for (int s : {1, -1}) {
      const int d =
          g.find_vertex_at(tv.x2 - t.dx + s * px, tv.y2 - t.dy + s * py);
      if (d != -1) g.add_edge(t.id, d, EdgeKind::DiagonalImpurity);
    }
  }
  return g;
}

PlaneGraph build_rooted(const GridSpec& spec, RootedVariant variant) {
  spec.validate();
  PlaneGraph g = build_g1(spec);
  std::vector<long> free_slots(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v)
    free_slots[v] = 4 - g.degree(v);
  for (const auto& t : spec.terminals) --free_slots[primal_id(spec, t.site)];

  const int root = g.add_vertex(Role::Root, 2 * spec.width() + 4,
                                2 * spec.height() + 4);
  if (variant == RootedVariant::WithTerminals) {
    for (const auto& t : spec.terminals) {
      const int T = g.add_vertex(Role::Terminal, 2 * t.site.x + 2 * dir_dx(t.dir),
                                 2 * t.site.y + 2 * dir_dy(t.dir));
      g.add_edge(primal_id(spec, t.site), T, EdgeKind::TerminalEdge);
      g.add_edge(T, root, EdgeKind::RootEdge);
    }
  } else {
    // Terminal slots become unit root-edges, kept in terminal order.
    for (const auto& t : spec.terminals)
      g.add_edge(primal_id(spec, t.site), root, EdgeKind::TerminalEdge);
  }
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.vertex(v).role == Role::Primal && free_slots[v] > 0)
      g.add_edge(v, root, EdgeKind::RootEdge, free_slots[v]);
  return g;
}

PlaneGraph build_circular_base(const GridSpec& spec) {
  spec.validate();
  PlaneGraph g = build_g1(spec);
  for (const auto& t : spec.terminals) {
    const int T = g.add_vertex(Role::Terminal, 2 * t.site.x + 2 * dir_dx(t.dir),
                               2 * t.site.y + 2 * dir_dy(t.dir));
    g.add_edge(primal_id(spec, t.site), T, EdgeKind::TerminalEdge);
  }
  for (int y = 1; y <= spec.height(); ++y)
    for (int x = 1; x <= spec.width(); ++x)
      for (Dir d : kDirs) {
        if (!spec.points_outward({x, y}, d)) continue;
        const int px = 2 * x + 2 * dir_dx(d), py = 2 * y + 2 * dir_dy(d);
        if (g.find_vertex_at(px, py) != -1) continue;  // terminal there
        const int stub = g.add_vertex(Role::Boundary, px, py);
        g.add_edge(primal_id(spec, {x, y}), stub, EdgeKind::RootEdge);
      }
  return g;
}

std::vector<int> pendant_cycle(const PlaneGraph& base, const GridSpec& spec) {
  // Perimeter parameterization, anticlockwise: bottom (x asc), right
  // (y asc), top (x desc), left (y desc).
  struct Key {
    int segment;
    int along;
  };
  std::vector<std::pair<Key, int>> items;
  const int w = spec.width(), h = spec.height();
  for (const auto& v : base.vertices()) {
    if (v.role != Role::Boundary && v.role != Role::Terminal) continue;
    const int sx2 = v.x2 < 2 ? 2 : v.x2 > 2 * w ? 2 * w : v.x2;
    const int sy2 = v.y2 < 2 ? 2 : v.y2 > 2 * h ? 2 * h : v.y2;
    Key key{};
    if (v.y2 < sy2) key = {0, v.x2};            // south side
    else if (v.x2 > sx2) key = {1, v.y2};       // east side
    else if (v.y2 > sy2) key = {2, -v.x2};      // north side
    else key = {3, -v.y2};                      // west side
    items.push_back({key, v.id});
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return std::pair{a.first.segment, a.first.along} <
           std::pair{b.first.segment, b.first.along};
  });
  std::vector<int> cycle;
  for (auto& [k, id] : items) cycle.push_back(id);
  return cycle;
}

BoundaryArc boundary_arc(const GridSpec& spec, Coord a, Coord b) {
  if (a == b) throw std::invalid_argument("arc endpoints must differ");
  if (!spec.on_boundary(a) || !spec.on_boundary(b))
    throw std::invalid_argument("arc endpoints must lie on the boundary");
  auto cycle = boundary_cycle(spec);
  auto index_of = [&](Coord c) {
    for (size_t i = 0; i < cycle.size(); ++i)
      if (cycle[i] == c) return static_cast<int>(i);
    throw std::invalid_argument("arc endpoint not on the boundary cycle");
  };
  const int ia = index_of(a), ib = index_of(b);
  const int n = static_cast<int>(cycle.size());
  auto collect = [&](int from, int to, int step) {
    std::vector<Coord> out;
    for (int i = (from + step + n) % n; i != to; i = (i + step + n) % n) {
      out.push_back(cycle[i]);
      if (static_cast<int>(out.size()) > n) break;  // open path guard
    }
    return out;
  };
  auto clean = [&](const std::vector<Coord>& arc) {
    for (const auto& c : arc)
      if (spec.has_terminal_at(c)) return false;
    return true;
  };
  if (spec.height() == 1 || spec.width() == 1) {
    // Path graph: a single side exists.
    std::vector<Coord> arc = collect(std::min(ia, ib), std::max(ia, ib), 1);
    if (!clean(arc)) throw std::invalid_argument("arc contains a terminal");
    return {a, b, arc};
  }
  std::vector<Coord> fwd = collect(ia, ib, 1);
  std::vector<Coord> bwd = collect(ia, ib, -1);
  if (clean(fwd)) return {a, b, fwd};
  if (clean(bwd)) return {a, b, bwd};
  throw std::invalid_argument("no terminal-free arc between endpoints");
}

std::string export_dot(const PlaneGraph& g) {
  std::ostringstream os;
  os << "// impurity-dimer-graph v1\n";
  os << "graph impurity_dimer {\n";
  for (const auto& v : g.vertices())
    os << "  v" << v.id << " [role=" << role_name(v.role) << " pos=\""
       << coord_text(v.x2) << "," << coord_text(v.y2) << "\"];\n";
  for (const auto& e : g.edges()) {
    os << "  v" << e.u << " -- v" << e.v << " [kind=" << edge_kind_name(e.kind);
    if (e.weight != 1) os << " weight=" << e.weight;
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_json(const PlaneGraph& g) {
  std::ostringstream os;
  os << "{\"format\":\"impurity-dimer-graph v1\",\"schema\":1,\"vertices\":[";
  for (const auto& v : g.vertices()) {
    if (v.id) os << ",";
    os << "{\"id\":" << v.id << ",\"role\":\"" << role_name(v.role)
       << "\",\"x\":" << coord_text(v.x2) << ",\"y\":" << coord_text(v.y2)
       << "}";
  }
  os << "],\"edges\":[";
  for (const auto& e : g.edges()) {
    if (e.id) os << ",";
    os << "{\"id\":" << e.id << ",\"u\":" << e.u << ",\"v\":" << e.v
       << ",\"kind\":\"" << edge_kind_name(e.kind) << "\",\"weight\":" << e.weight
       << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace impdimer
