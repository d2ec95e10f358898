#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "impdimer/lattice.hpp"

using namespace impdimer;

namespace {

GridSpec spec_2x2_k1() {
  return GridSpec::rectangle(2, 2, 1, {{{1, 1}, Dir::W}});
}

}  // namespace

TEST_CASE("g1 shapes") {
  auto g = build_g1(GridSpec::rectangle(1, 1, 1, {{{1, 1}, Dir::N}}));
  CHECK(g.num_vertices() == 1);
  CHECK(g.num_edges() == 0);

  auto g33 = build_g1(GridSpec::rectangle(3, 3, 1, {{{1, 1}, Dir::W}}));
  CHECK(g33.num_vertices() == 9);
  CHECK(g33.num_edges() == 12);

  auto c4 = build_g1(GridSpec::chain(4, 1, {{{1, 1}, Dir::N}}));
  CHECK(c4.num_vertices() == 4);
  CHECK(c4.num_edges() == 3);
}

TEST_CASE("grid validation") {
  CHECK_THROWS(GridSpec::rectangle(0, 2, 1, {{{1, 1}, Dir::W}}));
  CHECK_THROWS(GridSpec::rectangle(2, 2, 1, {}));
  // Inward-pointing terminal.
  CHECK_THROWS(GridSpec::rectangle(2, 2, 1, {{{1, 1}, Dir::S}}));
  // Interior site.
  CHECK_THROWS(GridSpec::rectangle(3, 3, 1, {{{2, 2}, Dir::N}}));
  // Duplicate sites.
  CHECK_THROWS(
      GridSpec::rectangle(2, 2, 2, {{{1, 1}, Dir::W},
                                    {{1, 1}, Dir::N},
                                    {{2, 2}, Dir::E}}));
}

TEST_CASE("superposition vertex counts") {
  // 3x3 with k=2: 9 primal, 16 dual, 3 terminals.
  auto spec = GridSpec::rectangle(
      3, 3, 2, {{{1, 3}, Dir::S}, {{3, 2}, Dir::E}, {{2, 1}, Dir::N}});
  auto g = build_superposition(spec);
  int primal = 0, dual = 0, terminal = 0;
  for (const auto& v : g.vertices()) {
    primal += v.role == Role::Primal;
    dual += v.role == Role::Dual;
    terminal += v.role == Role::Terminal;
  }
  CHECK(primal == 9);
  CHECK(dual == 16);
  CHECK(terminal == 3);
  CHECK(g.num_vertices() % 2 == 0);

  // Every middle vertex has degree exactly 4.
  for (const auto& v : g.vertices())
    if (v.role == Role::Middle) CHECK(g.degree(v.id) == 4);

  // Parity for a sweep of specs.
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) {
      GridSpec s = GridSpec::rectangle(n, m, 1, {{{1, 1}, Dir::N}});
      CHECK(build_superposition(s).num_vertices() % 2 == 0);
      CHECK(build_superposition(s).num_vertices() ==
            4 * n * m + 2 * n + 2 * m + 2);
    }
}

TEST_CASE("rooted graphs reach degree 4") {
  auto g = build_rooted(spec_2x2_k1(), RootedVariant::TerminalsIdentified);
  CHECK(g.num_vertices() == 5);
  for (const auto& v : g.vertices())
    if (v.role == Role::Primal) CHECK(g.degree(v.id) == 4);

  auto g3 = build_rooted(GridSpec::rectangle(3, 3, 1, {{{1, 1}, Dir::W}}),
                         RootedVariant::TerminalsIdentified);
  for (const auto& v : g3.vertices())
    if (v.role == Role::Primal) CHECK(g3.degree(v.id) == 4);

  auto gc = build_rooted(GridSpec::chain(3, 1, {{{1, 1}, Dir::N}}),
                         RootedVariant::TerminalsIdentified);
  for (const auto& v : gc.vertices())
    if (v.role == Role::Primal) CHECK(gc.degree(v.id) == 4);
}

TEST_CASE("boundary arcs") {
  auto spec = GridSpec::rectangle(
      2, 3, 2, {{{2, 3}, Dir::S}, {{2, 2}, Dir::E}, {{2, 1}, Dir::N}});
  auto arc = boundary_arc(spec, {1, 3}, {1, 1});
  REQUIRE(arc.members.size() == 1);
  CHECK(arc.members[0] == Coord{1, 2});

  // Adjacent endpoints: empty arc.
  auto arc2 = boundary_arc(spec, {1, 2}, {1, 1});
  CHECK(arc2.members.empty());

  CHECK_THROWS(boundary_arc(spec, {1, 1}, {1, 1}));
  // Both sides blocked by terminals.
  auto tough = GridSpec::rectangle(
      2, 2, 2,
      {{{1, 2}, Dir::S}, {{2, 2}, Dir::E}, {{2, 1}, Dir::N}});
  CHECK_THROWS(boundary_arc(tough, {2, 2}, {1, 1}));
}

TEST_CASE("exports are deterministic") {
  auto g = build_g1(spec_2x2_k1());
  CHECK(export_dot(g) == export_dot(g));
  CHECK(export_dot(g).starts_with("// impurity-dimer-graph v1\n"));
  CHECK(export_json(g) == export_json(g));
}
