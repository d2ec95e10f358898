#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "impdimer/lattice.hpp"
#include "impdimer/walks.hpp"

using namespace impdimer;

TEST_CASE("counter generator is deterministic and order-free") {
  CounterRng a(42), b(42), c(43);
  std::vector<std::uint64_t> s1, s2;
  for (int i = 0; i < 16; ++i) s1.push_back(a.next());
  for (int i = 0; i < 16; ++i) s2.push_back(b.next());
  CHECK(s1 == s2);
  CHECK(c.next() != s1[0]);
  CounterRng d(42);
  for (int i = 0; i < 1000; ++i) {
    const int s = d.uniform_slot();
    CHECK(s >= 0);
    CHECK(s < 4);
  }
}

TEST_CASE("slot map marks exits and terminals") {
  auto spec = GridSpec::rectangle(1, 1, 1, {{{1, 1}, Dir::N}});
  auto slots = walk_slots(spec);
  REQUIRE(slots.size() == 1);
  for (int d = 0; d < 4; ++d) CHECK(slots[0][d].neighbor == -1);
  CHECK(slots[0][static_cast<int>(Dir::N)].terminal == 0);
  CHECK(slots[0][static_cast<int>(Dir::S)].terminal == -1);
}

TEST_CASE("single-vertex trees use each slot a quarter of the time") {
  auto spec = GridSpec::rectangle(1, 1, 1, {{{1, 1}, Dir::N}});
  CounterRng rng(7);
  const long n = 100000;
  long used[4] = {0, 0, 0, 0};
  for (long i = 0; i < n; ++i) ++used[wilson_sample(spec, rng).parent_slot[0]];
  const double sigma = std::sqrt(0.25 * 0.75 * n);
  for (int d = 0; d < 4; ++d)
    CHECK(std::fabs(used[d] - 0.25 * n) < 3 * sigma);
}

TEST_CASE("fixed seeds reproduce the sampled tree") {
  auto spec = GridSpec::rectangle(3, 3, 1, {{{1, 1}, Dir::W}});
  CounterRng r1(99), r2(99);
  for (int i = 0; i < 5; ++i)
    CHECK(wilson_sample(spec, r1).parent_slot ==
          wilson_sample(spec, r2).parent_slot);
}

TEST_CASE("loop-erased walks are self-avoiding") {
  auto spec = GridSpec::rectangle(3, 3, 1, {{{1, 1}, Dir::W}});
  CounterRng rng(5);
  for (int i = 0; i < 50; ++i) {
    auto path = lerw(spec, {2, 2}, {{1, 1}}, rng);
    std::set<int> uniq(path.begin(), path.end());
    CHECK(uniq.size() == path.size());
    CHECK(path.front() == primal_id(spec, {2, 2}));
    // Consecutive vertices are grid neighbors.
    for (size_t j = 1; j < path.size(); ++j) {
      const Coord u = primal_coord(spec, path[j - 1]);
      const Coord v = primal_coord(spec, path[j]);
      CHECK(std::abs(u.x - v.x) + std::abs(u.y - v.y) == 1);
    }
  }

  // On a two-vertex chain the only self-avoiding route is the edge itself.
  auto chain = GridSpec::chain(2, 1, {{{1, 1}, Dir::N}});
  CounterRng r2(11);
  auto p = lerw(chain, {1, 1}, {{2, 1}}, r2);
  CHECK(p == std::vector<int>{0, 1});
}

TEST_CASE("TI length and membership statistics match the exact values") {
  auto spec = GridSpec::rectangle(2, 2, 1, {{{1, 1}, Dir::W}});
  const long n = 50000;
  auto st = ti_length_stats(spec, 0, n, 2024);
  CHECK(st.samples == n);

  // Exact: E[l_T] = (56+16+16+8)/192 = 1/2.
  double var = 0;
  const double mean = st.mean_length();
  for (size_t l = 0; l < st.length_counts.size(); ++l)
    var += (l - mean) * (l - mean) * st.length_counts[l];
  var /= n;
  CHECK(std::fabs(mean - 0.5) < 3 * std::sqrt(var / n));

  // Membership: P(x in C_t) = M(x)/det K.
  const double expected[4] = {56.0 / 192, 16.0 / 192, 16.0 / 192, 8.0 / 192};
  for (int v = 0; v < 4; ++v) {
    const double p = expected[v];
    const double sigma = std::sqrt(p * (1 - p) / n);
    CHECK(std::fabs(st.membership[v] / double(n) - p) < 3 * sigma);
  }
}

TEST_CASE("random-walk hitting frequency approaches the inverse entry") {
  auto spec = GridSpec::rectangle(2, 2, 1, {{{1, 1}, Dir::W}});
  const long n = 100000;
  const double p = 7.0 / 24;  // K^{-1}(t, t)
  const double est = srw_hitting_estimate(spec, {1, 1}, 0, n, 31337);
  CHECK(std::fabs(est - p) < 3 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("chi-square tail probabilities behave") {
  CHECK(chi_square_p(0.0, 10) == 1.0);
  CHECK(chi_square_p(9.34, 10) > 0.4);   // near the median
  CHECK(chi_square_p(9.34, 10) < 0.6);
  CHECK(chi_square_p(100.0, 10) < 1e-10);
  CHECK(chi_square_p(3.84, 1) < 0.0501);
  CHECK(chi_square_p(3.84, 1) > 0.0499);
}
