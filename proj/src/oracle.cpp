#include "impdimer/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "impdimer/lattice.hpp"

namespace impdimer {

// ---------------------------------------------------------------------
// perfect matchings
// ---------------------------------------------------------------------

namespace {

void match_rec(const PlaneGraph& g, std::vector<char>& covered, int hint,
               Matching& cur, const std::function<void(const Matching&)>& cb) {
  int u = -1;
  for (int i = hint; i < g.num_vertices(); ++i)
    if (!covered[i]) {
      u = i;
      break;
    }
  if (u == -1) {
    cb(cur);
    return;
  }
  covered[u] = 1;
  for (auto [e, v] : g.incident(u)) {
    if (covered[v]) continue;
    covered[v] = 1;
    cur.push_back(e);
    match_rec(g, covered, u + 1, cur, cb);
    cur.pop_back();
    covered[v] = 0;
  }
  covered[u] = 0;
}

}  // namespace

void enumerate_matchings(const PlaneGraph& g,
                         const std::function<void(const Matching&)>& cb) {
  if (g.num_vertices() % 2 != 0) return;
  std::vector<char> covered(g.num_vertices(), 0);
  Matching cur;
  match_rec(g, covered, 0, cur, cb);
}

Int count_matchings(const PlaneGraph& g) {
  Int n = 0;
  enumerate_matchings(g, [&](const Matching&) { ++n; });
  return n;
}

ImpurityTable count_matchings_by_impurity(const PlaneGraph& gk) {
  ImpurityTable table;
  enumerate_matchings(gk, [&](const Matching& m) {
    ImpurityKey key;
    for (int e : m) {
      const Edge& ed = gk.edge(e);
      if (ed.kind != EdgeKind::DiagonalImpurity) continue;
      const bool u_dual = gk.vertex(ed.u).role == Role::Dual;
      key.push_back(u_dual ? std::pair{ed.v, ed.u} : std::pair{ed.u, ed.v});
    }
    std::sort(key.begin(), key.end());
    ++table.by_config[key];
    std::vector<int> primal;
    for (auto& [i1, i2] : key) primal.push_back(i1);
    ++table.by_primal[primal];
    ++table.total;
  });
  return table;
}

// ---------------------------------------------------------------------
// spanning trees (deletion-contraction)
// ---------------------------------------------------------------------

namespace {

Int st_rec(std::vector<std::vector<Int>>& w, std::vector<char>& alive,
           int alive_count) {
  if (alive_count <= 1) return 1;
  const int n = static_cast<int>(w.size());
  int eu = -1, ev = -1;
  for (int u = 0; u < n && eu < 0; ++u) {
    if (!alive[u]) continue;
    for (int v = u + 1; v < n; ++v)
      if (alive[v] && w[u][v] != 0) {
        eu = u;
        ev = v;
        break;
      }
  }
  if (eu < 0) return 0;  // disconnected

  // Deletion branch.
  const Int mult = w[eu][ev];
  w[eu][ev] = w[ev][eu] = 0;
  Int total = st_rec(w, alive, alive_count);

  // Contraction branch: fold ev into eu.
  std::vector<Int> saved_u(n), saved_v(n);
  for (int x = 0; x < n; ++x) {
    saved_u[x] = w[eu][x];
    saved_v[x] = w[ev][x];
  }
  for (int x = 0; x < n; ++x) {
    if (x == eu || x == ev || !alive[x]) continue;
    w[eu][x] += w[ev][x];
    w[x][eu] = w[eu][x];
  }
  alive[ev] = 0;
  total += mult * st_rec(w, alive, alive_count - 1);
  alive[ev] = 1;
  for (int x = 0; x < n; ++x) {
    w[eu][x] = saved_u[x];
    w[x][eu] = saved_u[x];
    w[ev][x] = saved_v[x];
    w[x][ev] = saved_v[x];
  }
  w[eu][ev] = w[ev][eu] = mult;
  return total;
}

}  // namespace

Int enumerate_spanning_trees(const PlaneGraph& g) {
  const int n = g.num_vertices();
  if (n > 16)
    throw std::invalid_argument("spanning-tree oracle guard: > 16 vertices");
  if (n == 0) return 0;
  std::vector<std::vector<Int>> w(n, std::vector<Int>(n, Int(0)));
  for (const auto& e : g.edges()) {
    w[e.u][e.v] += e.weight;
    w[e.v][e.u] += e.weight;
  }
  std::vector<char> alive(n, 1);
  return st_rec(w, alive, n);
}

// ---------------------------------------------------------------------
// constrained forests: frontier DP over the grid
// ---------------------------------------------------------------------

namespace {

struct CompInfo {
  int8_t tag = -1;     // -1 unattached, 0..C-1 connection, C = plain tree
  uint16_t bits = 0;   // marker bits of required vertices seen
};

struct DpState {
  std::vector<int8_t> label;   // -1 = empty frontier slot
  std::vector<CompInfo> comp;  // indexed by label value
};

std::string encode(const DpState& s) {
  std::string key;
  key.reserve(s.label.size() * 4);
  std::vector<int8_t> remap(s.comp.size(), -1);
  int8_t next = 0;
  for (int8_t l : s.label) {
    if (l < 0) {
      key.push_back(-1);
      continue;
    }
    if (remap[l] < 0) remap[l] = next++;
    key.push_back(remap[l]);
  }
  std::vector<const CompInfo*> order(next, nullptr);
  for (size_t i = 0; i < s.comp.size(); ++i)
    if (remap[i] >= 0 && !order[remap[i]]) order[remap[i]] = &s.comp[i];
  for (int8_t i = 0; i < next; ++i) {
    key.push_back(static_cast<char>(order[i]->tag));
    key.push_back(static_cast<char>(order[i]->bits & 0xff));
    key.push_back(static_cast<char>(order[i]->bits >> 8));
  }
  return key;
}

DpState decode(const std::string& key, int width) {
  DpState s;
  s.label.assign(key.begin(), key.begin() + width);
  const int ncomp = static_cast<int>((key.size() - width) / 3);
  s.comp.resize(ncomp);
  for (int i = 0; i < ncomp; ++i) {
    s.comp[i].tag = static_cast<int8_t>(key[width + 3 * i]);
    s.comp[i].bits =
        static_cast<uint8_t>(key[width + 3 * i + 1]) |
        (static_cast<uint16_t>(static_cast<uint8_t>(key[width + 3 * i + 2]))
         << 8);
  }
  return s;
}

}  // namespace

Int enumerate_constrained_forests(const GridSpec& spec,
                                  const ForestPattern& pattern) {
  spec.validate();
  const bool flip = spec.width() > spec.height();
  const int W = flip ? spec.height() : spec.width();
  const int H = flip ? spec.width() : spec.height();
  if (W > 6)
    throw std::invalid_argument("forest oracle guard: frontier wider than 6");
  auto xf = [&](Coord c) { return flip ? Coord{c.y, c.x} : c; };
  auto cell_of = [&](Coord c) {
    Coord t = xf(c);
    return (t.y - 1) * W + (t.x - 1);
  };

  const int C = static_cast<int>(pattern.connections.size());
  const int ncells = W * H;

  // Compile marker bits and per-cell attachment options.
  std::vector<uint16_t> cell_bits(ncells, 0);
  std::vector<uint16_t> conn_bits(C, 0);
  std::vector<int> generic_weight(ncells, 0);
  std::vector<std::vector<int>> arc_tags(ncells);   // arc connections
  std::vector<int> terminal_tag(ncells, -2);        // -2: no terminal slot

  int nbits = 0;
  auto add_marker = [&](Coord c, int j) {
    if (!spec.contains(c))
      throw std::invalid_argument("pattern vertex outside grid");
    const int cell = cell_of(c);
    if (nbits >= 16) throw std::invalid_argument("too many pattern vertices");
    const uint16_t bit = static_cast<uint16_t>(1u << nbits++);
    if (cell_bits[cell] != 0)
      throw std::invalid_argument("pattern vertices must be distinct");
    cell_bits[cell] = bit;
    conn_bits[j] |= bit;
  };

  std::vector<int> term_mode(spec.terminals.size(), -2);  // conn or -2
  std::vector<char> term_is_attach(spec.terminals.size(), 0);
  for (int j = 0; j < C; ++j) {
    const auto& conn = pattern.connections[j];
    for (Coord c : conn.required) add_marker(c, j);
    for (int ti : conn.pendant_terminals) {
      if (ti < 0 || ti >= static_cast<int>(spec.terminals.size()))
        throw std::invalid_argument("pendant terminal index out of range");
      if (term_mode[ti] != -2)
        throw std::invalid_argument("terminal referenced twice in pattern");
      term_mode[ti] = j;
      add_marker(spec.terminals[ti].site, j);
    }
    if (conn.detached) {
      if (conn.terminal_index >= 0 || !conn.arc.empty())
        throw std::invalid_argument(
            "detached connection cannot carry an attachment");
      if (conn_bits[j] == 0)
        throw std::invalid_argument(
            "detached connection needs at least one vertex");
    } else if (conn.terminal_index >= 0) {
      const int ti = conn.terminal_index;
      if (ti >= static_cast<int>(spec.terminals.size()))
        throw std::invalid_argument("terminal index out of range");
      if (term_mode[ti] != -2)
        throw std::invalid_argument("terminal referenced twice in pattern");
      term_mode[ti] = j;
      term_is_attach[ti] = 1;
    } else if (conn.arc.empty()) {
      throw std::invalid_argument(
          "connection needs a terminal slot, an arc, or detached");
    }
    for (Coord c : conn.arc) {
      if (!spec.contains(c))
        throw std::invalid_argument("arc vertex outside grid");
      arc_tags[cell_of(c)].push_back(j);
    }
  }

  // Free generic slots per vertex; terminal slots handled separately.
  for (int y = 1; y <= spec.height(); ++y)
    for (int x = 1; x <= spec.width(); ++x) {
      int deg = 0;
      for (auto [dx, dy] :
           {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}})
        if (spec.contains({x + dx, y + dy})) ++deg;
      generic_weight[cell_of({x, y})] = 4 - deg;
    }
  for (size_t i = 0; i < spec.terminals.size(); ++i) {
    const int cell = cell_of(spec.terminals[i].site);
    --generic_weight[cell];
    if (C == 0) {
      ++generic_weight[cell];  // empty pattern: terminal slot is plain
    } else if (term_mode[i] == -2) {
      throw std::invalid_argument(
          "every terminal must appear in a non-empty pattern");
    } else if (term_is_attach[i]) {
      terminal_tag[cell] = term_mode[i];
    }
    // Pendant terminals already contribute a marker at their site.
  }

  std::unordered_map<std::string, Int> states;
  {
    DpState init;
    init.label.assign(W, -1);
    states.emplace(encode(init), Int(1));
  }

  auto validate_close = [&](const CompInfo& ci) {
    if (ci.tag < 0) {
      // Only a detached connection may close without an attachment.
      for (int j = 0; j < C; ++j)
        if (pattern.connections[j].detached && ci.bits == conn_bits[j])
          return true;
      return false;
    }
    if (ci.tag == C) return ci.bits == 0;
    return ci.bits == conn_bits[ci.tag];
  };

  for (int cell = 0; cell < ncells; ++cell) {
    const int r = cell / W, c = cell % W;
    std::unordered_map<std::string, Int> next;
    for (const auto& [key, weight] : states) {
      const DpState s = decode(key, W);
      const int up = r > 0 ? s.label[c] : -1;
      const int left = c > 0 ? s.label[c - 1] : -1;
      for (int take_left = 0; take_left <= (left >= 0 ? 1 : 0); ++take_left)
        for (int take_up = 0; take_up <= (up >= 0 ? 1 : 0); ++take_up) {
          if (take_left && take_up && left == up) continue;  // cycle
          DpState t = s;
          const int lab = static_cast<int>(t.comp.size());
          t.comp.push_back({-1, cell_bits[cell]});
          auto merge_into = [&](int other) -> bool {
            CompInfo& a = t.comp[lab];
            CompInfo& b = t.comp[other];
            if (a.tag >= 0 && b.tag >= 0) return false;  // two attachments
            a.tag = std::max(a.tag, b.tag);
            a.bits |= b.bits;
            for (auto& l : t.label)
              if (l == other) l = static_cast<int8_t>(lab);
            return true;
          };
          bool ok = true;
          if (take_left) ok = merge_into(left);
          if (ok && take_up && (!take_left || up != left))
            ok = ok && merge_into(up);
          if (!ok) continue;
          // The up-neighbor cell leaves the frontier now.
          const int8_t old_up = (r > 0) ? s.label[c] : int8_t(-1);
          t.label[c] = static_cast<int8_t>(lab);

          // Attachment options for the new cell.
          struct Opt {
            int tag;
            long w;
          };
          std::vector<Opt> opts;
          opts.push_back({-1, 1});  // no slot at this cell
          if (t.comp[lab].tag < 0) {
            if (generic_weight[cell] > 0) {
              opts.push_back({C, generic_weight[cell]});
              for (int j : arc_tags[cell])
                opts.push_back({j, generic_weight[cell]});
            }
            if (terminal_tag[cell] >= 0)
              opts.push_back({terminal_tag[cell], 1});
          }

          // Did old_up's component vanish from the frontier? (Not if it
          // was merged into the new cell's component.)
          const bool up_merged =
              take_up || (take_left && left == static_cast<int>(old_up));
          int closing = -1;
          if (old_up >= 0 && !up_merged) {
            bool still = false;
            for (int8_t l : t.label)
              if (l == old_up) {
                still = true;
                break;
              }
            if (!still) closing = old_up;
          }
          if (closing >= 0 && !validate_close(t.comp[closing])) continue;
          for (const Opt& o : opts) {
            DpState u = t;
            if (o.tag >= 0) u.comp[lab].tag = static_cast<int8_t>(o.tag);
            next[encode(u)] += weight * o.w;
          }
        }
    }
    states = std::move(next);
  }

  Int total = 0;
  for (const auto& [key, weight] : states) {
    const DpState s = decode(key, W);
    std::vector<char> seen(s.comp.size(), 0);
    bool ok = true;
    for (int8_t l : s.label) {
      if (l < 0 || seen[l]) continue;
      seen[l] = 1;
      if (!validate_close(s.comp[l])) {
        ok = false;
        break;
      }
    }
    if (ok) total += weight;
  }
  return total;
}

// ---------------------------------------------------------------------
// groves
// ---------------------------------------------------------------------

namespace {

int uf_find(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

void grove_rec(const CircularGraph& c, size_t ei, std::vector<int>& parent,
               Int acc,
               const std::function<void(const std::vector<int>&, const Int&)>&
                   leaf) {
  if (ei == c.merged_edges.size()) {
    leaf(parent, acc);
    return;
  }
  auto [u, v, w] = c.merged_edges[ei];
  // Skip this edge.
  grove_rec(c, ei + 1, parent, acc, leaf);
  // Take it, unless it closes a cycle.
  std::vector<int> saved = parent;
  if (uf_find(parent, u) != uf_find(parent, v)) {
    parent[uf_find(parent, u)] = uf_find(parent, v);
    grove_rec(c, ei + 1, parent, acc * w, leaf);
  }
  parent = saved;
}

std::vector<std::vector<int>> canonical_partition(
    const CircularGraph& c, std::vector<int>& parent) {
  std::map<int, std::vector<int>> by_root;
  for (int nd : c.nodes) by_root[uf_find(parent, nd)].push_back(nd);
  std::vector<std::vector<int>> blocks;
  for (auto& [root, blk] : by_root) {
    std::sort(blk.begin(), blk.end());
    blocks.push_back(blk);
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

bool every_tree_has_node(const CircularGraph& c, std::vector<int>& parent) {
  std::map<int, bool> root_has_node;
  for (int nd : c.nodes) root_has_node[uf_find(parent, nd)] = true;
  for (int v : c.interior)
    if (!root_has_node.count(uf_find(parent, v))) return false;
  return true;
}

int max_vertex_id(const CircularGraph& c) {
  int mx = -1;
  for (int v : c.nodes) mx = std::max(mx, v);
  for (int v : c.interior) mx = std::max(mx, v);
  for (auto& [u, v, w] : c.merged_edges) mx = std::max({mx, u, v});
  return mx;
}

}  // namespace

std::map<std::vector<std::vector<int>>, Int> enumerate_groves_all(
    const CircularGraph& c) {
  if (c.nodes.size() + c.interior.size() > 12)
    throw std::invalid_argument("grove oracle guard: > 12 vertices");
  std::map<std::vector<std::vector<int>>, Int> out;
  std::vector<int> parent(max_vertex_id(c) + 1);
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  grove_rec(c, 0, parent, Int(1),
            [&](const std::vector<int>& p, const Int& w) {
              std::vector<int> q = p;
              if (!every_tree_has_node(c, q)) return;
              out[canonical_partition(c, q)] += w;
            });
  return out;
}

Int enumerate_groves(const CircularGraph& c, const PartitionSpec& p) {
  std::vector<std::vector<int>> want = p.blocks;
  for (auto& blk : want) std::sort(blk.begin(), blk.end());
  std::sort(want.begin(), want.end());
  auto all = enumerate_groves_all(c);
  auto it = all.find(want);
  return it == all.end() ? Int(0) : it->second;
}

}  // namespace impdimer
