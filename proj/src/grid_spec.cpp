#include "impdimer/grid_spec.hpp"

#include <set>
#include <stdexcept>

namespace impdimer {

Dir parse_dir(char c) {
  switch (c) {
    case 'N': return Dir::N;
    case 'E': return Dir::E;
    case 'S': return Dir::S;
    case 'W': return Dir::W;
  }
  throw std::invalid_argument("direction must be one of N/E/S/W");
}

char dir_char(Dir d) {
  switch (d) {
    case Dir::N: return 'N';
    case Dir::E: return 'E';
    case Dir::S: return 'S';
    case Dir::W: return 'W';
  }
  return '?';
}

int dir_dx(Dir d) { return d == Dir::E ? 1 : d == Dir::W ? -1 : 0; }
int dir_dy(Dir d) { return d == Dir::N ? -1 : d == Dir::S ? 1 : 0; }

GridSpec GridSpec::rectangle(int n, int m, int k,
                             std::vector<TerminalSpec> terminals) {
  GridSpec s;
  s.shape = Shape::Rectangle;
  s.n = n;
  s.m = m;
  s.k = k;
  s.terminals = std::move(terminals);
  s.validate();
  return s;
}

GridSpec GridSpec::chain(int n, int k, std::vector<TerminalSpec> terminals) {
  GridSpec s;
  s.shape = Shape::Chain;
  s.n = n;
  s.m = 1;
  s.k = k;
  s.terminals = std::move(terminals);
  s.validate();
  return s;
}

bool GridSpec::contains(Coord c) const {
  return c.x >= 1 && c.x <= width() && c.y >= 1 && c.y <= height();
}

bool GridSpec::on_boundary(Coord c) const {
  if (!contains(c)) return false;
  return c.x == 1 || c.x == width() || c.y == 1 || c.y == height();
}

bool GridSpec::points_outward(Coord c, Dir d) const {
  return contains(c) && !contains({c.x + dir_dx(d), c.y + dir_dy(d)});
}

bool GridSpec::has_terminal_at(Coord c) const {
  for (const auto& t : terminals)
    if (t.site == c) return true;
  return false;
}

void GridSpec::validate() const {
  if (n < 1 || m < 1) throw std::invalid_argument("grid dimensions must be >= 1");
  if (shape == Shape::Chain && m != 1)
    throw std::invalid_argument("chain height must be 1");
  if (k < 1) throw std::invalid_argument("impurity count k must be >= 1");
  if (static_cast<int>(terminals.size()) != 2 * k - 1)
    throw std::invalid_argument("terminal count must be exactly 2k-1");
  std::set<Coord> sites;
  std::set<std::pair<Coord, char>> placements;
  for (const auto& t : terminals) {
    if (!on_boundary(t.site))
      throw std::invalid_argument("terminal site must lie on the boundary");
    if (!points_outward(t.site, t.dir))
      throw std::invalid_argument(
          "terminal direction must point into the outer face");
    if (!sites.insert(t.site).second)
      throw std::invalid_argument("terminal sites must be pairwise distinct");
    placements.insert({t.site, dir_char(t.dir)});
  }
}

std::vector<Coord> boundary_cycle(const GridSpec& spec) {
  const int w = spec.width(), h = spec.height();
  std::vector<Coord> cycle;
  if (w == 1 && h == 1) {
    cycle.push_back({1, 1});
    return cycle;
  }
  if (h == 1) {  // path: out and back is not a cycle; list left-to-right
    for (int x = 1; x <= w; ++x) cycle.push_back({x, 1});
    return cycle;
  }
  if (w == 1) {
    for (int y = 1; y <= h; ++y) cycle.push_back({1, y});
    return cycle;
  }
  for (int x = 1; x <= w; ++x) cycle.push_back({x, 1});
  for (int y = 2; y <= h; ++y) cycle.push_back({w, y});
  for (int x = w - 1; x >= 1; --x) cycle.push_back({x, h});
  for (int y = h - 1; y >= 2; --y) cycle.push_back({1, y});
  return cycle;
}

}  // namespace impdimer
