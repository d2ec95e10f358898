#pragma once

#include <string>
#include <vector>

namespace impdimer {

enum class Dir { N, E, S, W };

Dir parse_dir(char c);
char dir_char(Dir d);
int dir_dx(Dir d);
int dir_dy(Dir d);

// Grid coordinates are 1-based: primal vertices live at (x, y),
// 1 <= x <= width, 1 <= y <= height, with row 1 at the top (N points
// outward at y = 1, S at y = height). Chains are width n, height 1.
struct Coord {
  int x = 0;
  int y = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

struct TerminalSpec {
  Coord site;  // primal boundary vertex the terminal hangs off
  Dir dir;     // outward direction into the outer face
};

struct GridSpec {
  enum class Shape { Rectangle, Chain };

  Shape shape = Shape::Rectangle;
  int n = 1;  // width (chain length for Shape::Chain)
  int m = 1;  // height (1 for chains)
  int k = 1;  // impurity count; terminals.size() == 2k-1
  std::vector<TerminalSpec> terminals;  // ordered: t_1, ..., t_{2k-1}

  static GridSpec rectangle(int n, int m, int k,
                            std::vector<TerminalSpec> terminals);
  static GridSpec chain(int n, int k, std::vector<TerminalSpec> terminals);

  int width() const { return n; }
  int height() const { return shape == Shape::Chain ? 1 : m; }

  bool contains(Coord c) const;
  bool on_boundary(Coord c) const;
  // True if stepping from c in direction d leaves the grid.
  bool points_outward(Coord c, Dir d) const;
  bool has_terminal_at(Coord c) const;

  // Throws std::invalid_argument naming the violated precondition.
  void validate() const;
};

// Anticlockwise boundary cycle of primal vertices, starting at (1,1).
std::vector<Coord> boundary_cycle(const GridSpec& spec);

}  // namespace impdimer
