#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "impdimer/counts.hpp"
#include "impdimer/exact_matrix.hpp"
#include "impdimer/lattice.hpp"

using namespace impdimer;

TEST_CASE("single-impurity counts match the adjugate") {
  auto spec = GridSpec::rectangle(2, 2, 1, {{{1, 1}, Dir::W}});
  CHECK(count_one_impurity(spec, {1, 1}).value == 56);
  CHECK(count_one_impurity(spec, {2, 1}).value == 16);
  CHECK(count_one_impurity(spec, {1, 2}).value == 16);
  CHECK(count_one_impurity(spec, {2, 2}).value == 8);
  CHECK(count_one_impurity(spec, {1, 1}).route == "cofactor");

  auto tiny = GridSpec::rectangle(1, 1, 1, {{{1, 1}, Dir::N}});
  CHECK(count_one_impurity(tiny, {1, 1}).value == 1);

  auto chain = GridSpec::chain(2, 1, {{{1, 1}, Dir::N}});
  CHECK(count_one_impurity(chain, {1, 1}).value == 4);
  CHECK(count_one_impurity(chain, {2, 1}).value == 1);

  CHECK_THROWS(count_one_impurity(spec, {3, 3}));
}

TEST_CASE("two boundary impurities on the 2x3 grid") {
  auto spec = GridSpec::rectangle(
      2, 3, 2, {{{2, 3}, Dir::S}, {{2, 2}, Dir::E}, {{2, 1}, Dir::N}});
  auto r = count_two_boundary(spec, {1, 3}, {1, 1});
  CHECK(r.value == 1);  // matches the exhaustive per-configuration census
  CHECK(r.route == "cofactor");
  // Row swaps leave |det| alone.
  CHECK(count_two_boundary(spec, {1, 1}, {1, 3}).value == 1);
  // Adjacent endpoints leave no room for the arc tree.
  CHECK(count_two_boundary(spec, {1, 3}, {1, 2}).value == 0);
  CHECK_THROWS(count_two_boundary(spec, {5, 5}, {1, 1}));

  auto h = hitting_matrix_count(spec, {1, 3}, {1, 1});
  CHECK(h.value == r.value);
  CHECK(h.route == "hitting");
}

TEST_CASE("near-boundary correction on the 2x3 grid") {
  auto spec = GridSpec::rectangle(
      2, 3, 2, {{{2, 3}, Dir::S}, {{2, 2}, Dir::E}, {{2, 1}, Dir::N}});
  auto r = count_two_near_boundary(spec, {1, 3}, {1, 1});
  CHECK(r.value == 2);  // census value for the interior-dual configuration
  REQUIRE(r.decomposition.size() == 2);
  CHECK(r.decomposition[0].second == 1);  // A
  CHECK(r.decomposition[1].second == 1);  // B
}

TEST_CASE("k boundary impurities reduce to the two-impurity formula") {
  auto spec = GridSpec::rectangle(
      2, 3, 2, {{{2, 3}, Dir::S}, {{2, 2}, Dir::E}, {{2, 1}, Dir::N}});
  CHECK(count_k_boundary(spec, {{1, 3}, {1, 1}}).value ==
        count_two_boundary(spec, {1, 3}, {1, 1}).value);
  CHECK(count_k_boundary(spec, {{1, 3}, {1, 3}}).value == 0);
}

TEST_CASE("chain counts split into base and correction terms") {
  auto spec = GridSpec::chain(
      7, 2, {{{1, 1}, Dir::N}, {{4, 1}, Dir::N}, {{7, 1}, Dir::N}});
  ImpurityConfig both_south{{{2, 1}, {6, 1}},
                            {DualClass::Boundary, DualClass::Boundary}};
  CHECK(count_chain(spec, both_south).value == 24);

  ImpurityConfig figure{{{2, 1}, {6, 1}},
                        {DualClass::NearBoundary, DualClass::Boundary}};
  auto f = count_chain(spec, figure);
  CHECK(f.value == 28);  // census value for the figure's configuration
  REQUIRE(f.decomposition.size() == 2);
  CHECK(f.decomposition[0].second == 24);
  CHECK(f.decomposition[1].second == 4);
  CHECK(f.route == "grove");

  ImpurityConfig mirrored{{{2, 1}, {6, 1}},
                          {DualClass::Boundary, DualClass::NearBoundary}};
  CHECK(count_chain(spec, mirrored).value == 28);

  ImpurityConfig both_north{{{2, 1}, {6, 1}},
                            {DualClass::NearBoundary, DualClass::NearBoundary}};
  CHECK(count_chain(spec, both_north).value == 32);

  ImpurityConfig adjacent{{{2, 1}, {3, 1}}, {}};
  CHECK(count_chain(spec, adjacent).decomposition[0].second == 0);

  auto one = GridSpec::chain(5, 1, {{{1, 1}, Dir::N}});
  ImpurityConfig single{{{3, 1}}, {}};
  CHECK(count_chain(one, single).value ==
        count_one_impurity(one, {3, 1}).value);

  CHECK_THROWS(count_chain(spec, ImpurityConfig{{{4, 1}, {6, 1}}, {}}));
  CHECK_THROWS(count_chain(spec, ImpurityConfig{{{2, 1}}, {}}));
}

TEST_CASE("impurity distribution on the 2x2 grid") {
  auto spec = GridSpec::rectangle(2, 2, 1, {{{1, 1}, Dir::W}});
  auto d = impurity_distribution(spec);
  REQUIRE(d.rows.size() == 4);
  CHECK(d.det_k == 192);
  CHECK(d.rows[0].weight == 56);
  CHECK(d.rows[1].weight == 16);
  CHECK(d.rows[2].weight == 16);
  CHECK(d.rows[3].weight == 8);

  // Probabilities plus the terminal atom sum to one; each vertex carries
  // 4 M(x) / (4 Sum M + 2 det K).
  Rational total = d.terminal_probability;
  for (const auto& row : d.rows) total += row.probability;
  CHECK(total == Rational(1));
  CHECK(d.rows[0].probability == Rational(4 * 56, 768));
  CHECK(d.terminal_probability == Rational(2 * 192, 768));

  // The terminal site maximizes the probability.
  for (const auto& row : d.rows)
    CHECK(row.probability <= d.rows[0].probability);

  auto raw = impurity_distribution(spec, Normalization::RawWeight);
  Rational raw_total = raw.terminal_probability;
  for (const auto& row : raw.rows) raw_total += row.probability;
  CHECK(raw_total != Rational(1));
}

TEST_CASE("chain weights decrease away from the terminal") {
  auto spec = GridSpec::chain(40, 1, {{{1, 1}, Dir::N}});
  auto d = impurity_distribution(spec);
  for (size_t j = 1; j < d.rows.size(); ++j)
    CHECK(d.rows[j].weight < d.rows[j - 1].weight);
}

TEST_CASE("hitting route equals the cofactor route on a 4x5 grid") {
  auto spec = GridSpec::rectangle(4, 5, 2,
                                  {{{4, 5}, Dir::E},
                                   {{4, 3}, Dir::E},
                                   {{4, 1}, Dir::E}});
  auto cof = count_two_boundary(spec, {1, 5}, {1, 2});
  auto hit = hitting_matrix_count(spec, {1, 5}, {1, 2});
  CHECK(cof.value == hit.value);
  CHECK(cof.value > 0);
}
