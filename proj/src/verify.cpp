#include "impdimer/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "impdimer/asymptotics.hpp"
#include "impdimer/counts.hpp"
#include "impdimer/exact_matrix.hpp"
#include "impdimer/grove.hpp"
#include "impdimer/lattice.hpp"
#include "impdimer/oracle.hpp"
#include "impdimer/walks.hpp"

namespace impdimer {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

std::string fmt(const Int& v) { return to_string(v); }

// ---- criterion 1 ---------------------------------------------------------

CriterionResult census_multiplicity(bool full) {
  Check c;
  std::vector<GridSpec> specs = {
      GridSpec::rectangle(2, 2, 1, {{{1, 1}, Dir::W}}),
      GridSpec::chain(3, 1, {{{2, 1}, Dir::N}})};
  if (full) {
    specs.push_back(GridSpec::rectangle(2, 2, 1, {{{2, 1}, Dir::N}}));
    specs.push_back(GridSpec::rectangle(2, 3, 1, {{{1, 2}, Dir::W}}));
    specs.push_back(GridSpec::rectangle(2, 3, 1, {{{2, 3}, Dir::S}}));
    specs.push_back(GridSpec::chain(2, 1, {{{1, 1}, Dir::N}}));
    specs.push_back(GridSpec::chain(4, 1, {{{4, 1}, Dir::N}}));
    specs.push_back(GridSpec::chain(5, 1, {{{1, 1}, Dir::N}}));
  }
  int instances = 0;
  for (const auto& spec : specs) {
    auto table = count_matchings_by_impurity(build_superposition(spec));
    auto k = dirichlet_matrix(build_g1(spec));
    const Int det_k = abs(to_integer(k.det()));
    for (int x = 1; x <= spec.width(); ++x)
      for (int y = 1; y <= spec.height(); ++y) {
        const int id = primal_id(spec, {x, y});
        c.expect(table.by_primal.count({id}) != 0,
                 "census missing a primal site");
        if (!table.by_primal.count({id})) continue;
        const Int m = count_one_impurity(spec, {x, y}).value;
        c.expect(table.by_primal.at({id}) == 4 * m,
                 "census != 4*M at (" + std::to_string(x) + "," +
                     std::to_string(y) + "): " +
                     fmt(table.by_primal.at({id})) + " vs 4*" + fmt(m));
      }
    const auto terms =
        build_superposition(spec).vertices_with_role(Role::Terminal);
    c.expect(terms.size() == 1 && table.by_primal.count({terms[0]}) &&
                 table.by_primal.at({terms[0]}) == 2 * det_k,
             "terminal census != 2*det K");
    ++instances;
  }
  c.detail << (c.ok ? "" : "; ") << instances
           << " instances, every site matched";
  return {1, "census multiplicity: exhaustive matchings vs determinants",
          c.ok, c.detail.str()};
}

// ---- criterion 2 ---------------------------------------------------------

CriterionResult normalization_resolution(bool full) {
  Check c;
  std::vector<GridSpec> specs = {
      GridSpec::rectangle(2, 2, 1, {{{1, 1}, Dir::W}}),
      GridSpec::chain(3, 1, {{{1, 1}, Dir::N}})};
  if (full) specs.push_back(GridSpec::chain(2, 1, {{{1, 1}, Dir::N}}));
  bool resolved_all = true, raw_all = true;
  for (const auto& spec : specs) {
    auto table = count_matchings_by_impurity(build_superposition(spec));
    const auto terms =
        build_superposition(spec).vertices_with_role(Role::Terminal);
    for (Normalization norm : {Normalization::Resolved,
                               Normalization::RawWeight}) {
      auto d = impurity_distribution(spec, norm);
      bool matches = true;
      for (const auto& row : d.rows) {
        const int id = primal_id(spec, row.site);
        if (row.probability !=
            Rational(table.by_primal.at({id}), table.total))
          matches = false;
      }
      if (d.terminal_probability !=
          Rational(table.by_primal.at({terms[0]}), table.total))
        matches = false;
      (norm == Normalization::Resolved ? resolved_all : raw_all) &=
          matches;
    }
  }
  c.detail << "site law P(I1=x) = 4M(x)/(4*sum M + 2 det K) with atom "
              "P(I1=T) = 2 det K/(4*sum M + 2 det K): "
           << (resolved_all ? "matches the census" : "MISMATCH")
           << "; form without the 4x site factor and atom: "
           << (raw_all ? "matches" : "does not match");
  c.expect(resolved_all || raw_all, "no normalization matches the census");
  return {2, "normalization: distribution matches the exhaustive census",
          c.ok, c.detail.str()};
}

// ---- criterion 3 ---------------------------------------------------------

CriterionResult two_boundary_routes(bool) {
  Check c;
  auto spec = GridSpec::rectangle(
      4, 5, 2, {{{4, 5}, Dir::E}, {{4, 3}, Dir::E}, {{4, 1}, Dir::E}});
  const Coord a{1, 5}, b{1, 2};
  const Int det_route = count_two_boundary(spec, a, b).value;
  const Int hit_route = hitting_matrix_count(spec, a, b).value;
  ForestPattern p;
  p.connections = {{{a}, {}, 0, {}},
                   {{}, {1}, -1, {{1, 4}, {1, 3}}},
                   {{b}, {}, 2, {}}};
  const Int forest = enumerate_constrained_forests(spec, p);
  c.expect(det_route == forest, "determinant " + fmt(det_route) +
                                    " != forest count " + fmt(forest));
  c.expect(det_route == hit_route, "determinant " + fmt(det_route) +
                                       " != hitting route " + fmt(hit_route));
  c.expect(det_route > 0, "count is zero");
  c.detail << (c.ok ? "" : "; ") << "4x5 grid: all three routes give "
           << fmt(det_route);
  return {3, "two boundary impurities: determinant, forest and hitting "
             "routes agree",
          c.ok, c.detail.str()};
}

// ---- criterion 4 ---------------------------------------------------------

CriterionResult near_boundary_correction(bool) {
  Check c;
  auto spec = GridSpec::rectangle(
      3, 6, 2, {{{3, 6}, Dir::E}, {{3, 3}, Dir::E}, {{3, 1}, Dir::E}});
  const Coord a{1, 5}, b{1, 1};
  auto r = count_two_near_boundary(spec, a, b);
  c.expect(r.decomposition.size() == 2, "missing A/B decomposition");
  ForestPattern pa;
  pa.connections = {{{a}, {}, 0, {}},
                    {{}, {1}, -1, {{1, 4}, {1, 3}, {1, 2}}},
                    {{b}, {}, 2, {}}};
  ForestPattern pb;
  pb.connections = {{{a}, {0}, -1, {}, true},
                    {{{1, 4}}, {1}, -1, {}, true},
                    {{b}, {2}, -1, {}, true}};
  const Int fa = enumerate_constrained_forests(spec, pa);
  const Int fb = enumerate_constrained_forests(spec, pb);
  if (r.decomposition.size() == 2) {
    c.expect(r.decomposition[0].second == fa,
             "A term " + fmt(r.decomposition[0].second) + " != forest " +
                 fmt(fa));
    c.expect(r.decomposition[1].second == fb,
             "B term " + fmt(r.decomposition[1].second) + " != forest " +
                 fmt(fb));
  }
  c.expect(r.value == fa + fb,
           "total " + fmt(r.value) + " != " + fmt(fa) + "+" + fmt(fb));
  c.expect(fb > 0, "correction term vanishes");
  c.detail << (c.ok ? "" : "; ") << "3x6 grid: A=" << fmt(fa)
           << ", B=" << fmt(fb) << ", total " << fmt(r.value);
  return {4, "near-boundary correction: determinant matches the forest "
             "oracle",
          c.ok, c.detail.str()};
}

// ---- criterion 5 ---------------------------------------------------------

CriterionResult three_boundary_impurities(bool) {
  Check c;
  auto spec = GridSpec::rectangle(3, 7, 3,
                                  {{{3, 7}, Dir::E},
                                   {{3, 6}, Dir::E},
                                   {{3, 4}, Dir::E},
                                   {{3, 2}, Dir::E},
                                   {{3, 1}, Dir::E}});
  auto r = count_k_boundary(spec, {{1, 6}, {1, 4}, {1, 2}});
  ForestPattern p;
  p.connections = {{{{1, 6}}, {}, 0, {}},
                   {{}, {1}, -1, {{1, 5}}},
                   {{{1, 4}}, {}, 2, {}},
                   {{}, {3}, -1, {{1, 3}}},
                   {{{1, 2}}, {}, 4, {}}};
  const Int forest = enumerate_constrained_forests(spec, p);
  c.expect(r.value == forest,
           "determinant " + fmt(r.value) + " != forest " + fmt(forest));
  c.expect(r.value > 0, "count is zero");
  c.detail << (c.ok ? "" : "; ")
           << "3x7 grid, impurities (1,6),(1,4),(1,2): " << fmt(r.value);
  return {5, "three boundary impurities: determinant matches the forest "
             "oracle",
          c.ok, c.detail.str()};
}

// ---- criterion 6 ---------------------------------------------------------

CriterionResult perturbation_identities(bool full) {
  Check c;
  std::vector<GridSpec> specs = {
      GridSpec::rectangle(2, 2, 1, {{{1, 1}, Dir::W}}),
      GridSpec::rectangle(3, 4, 1, {{{1, 1}, Dir::W}})};
  if (full)
    specs.push_back(GridSpec::rectangle(6, 6, 1, {{{1, 1}, Dir::W}}));
  int checked = 0;
  for (const auto& spec : specs) {
    auto k = dirichlet_matrix(build_g1(spec));
    const int t = primal_id(spec, {1, 1});
    for (int x = 0; x < k.dim(); ++x) {
      auto kx = perturbed_matrix(k, x);
      const Rational gxx = k.inverse_entry(x, x);
      const Rational gxt = k.inverse_entry(x, t);
      c.expect(kx.inverse_entry(x, x) == gxx / (1 + gxx),
               "diagonal identity fails at vertex " + std::to_string(x));
      c.expect(kx.inverse_entry(x, t) == gxt / (1 + gxx),
               "cross identity fails at vertex " + std::to_string(x));
      c.expect(Rational(1) + gxx == kx.det() / k.det(),
               "determinant ratio fails at vertex " + std::to_string(x));
      c.expect(abs(kx.inverse_entry(x, t) * kx.det()) == abs(gxt * k.det()),
               "adjugate invariance fails at vertex " + std::to_string(x));
      ++checked;
    }
  }
  c.detail << (c.ok ? "" : "; ") << checked
           << " perturbed vertices, all four identities exact";
  return {6, "rank-one perturbation identities hold exactly", c.ok,
          c.detail.str()};
}

// ---- criterion 7 ---------------------------------------------------------

CriterionResult tree_determinant(bool) {
  Check c;
  int checked = 0;
  for (const auto& spec :
       {GridSpec::rectangle(2, 2, 1, {{{1, 1}, Dir::W}}),
        GridSpec::chain(2, 1, {{{1, 1}, Dir::N}}),
        GridSpec::chain(3, 1, {{{1, 1}, Dir::N}}),
        GridSpec::chain(4, 1, {{{1, 1}, Dir::N}})}) {
    auto rooted = build_rooted(spec, RootedVariant::TerminalsIdentified);
    const Int trees = enumerate_spanning_trees(rooted);
    const Int det_k =
        abs(to_integer(dirichlet_matrix(build_g1(spec)).det()));
    c.expect(trees == det_k, "instance " + std::to_string(checked) + ": " +
                                 fmt(trees) + " trees vs det " + fmt(det_k));
    ++checked;
  }
  c.detail << (c.ok ? "" : "; ") << checked
           << " graphs: deletion-contraction equals det K";
  return {7, "spanning-tree determinant matches deletion-contraction", c.ok,
          c.detail.str()};
}

// ---- criterion 8 ---------------------------------------------------------

CriterionResult grove_determinants(bool) {
  Check c;
  int checked = 0;
  auto check_partition = [&](const CircularGraph& cg, const PartitionSpec& p,
                             const std::string& label) {
    const Rational det = grove_count_bipartite(cg, p);
    const Int enumerated = enumerate_groves(cg, p);
    c.expect(is_integer(det) && to_integer(det) == enumerated,
             label + ": det " + to_string(det) + " vs enumeration " +
                 fmt(enumerated));
    ++checked;
  };
  auto pair_partition = [](const std::vector<int>& nodes, int a, int b) {
    PartitionSpec p;
    p.coloring = {{a, NodeColor::Red}, {b, NodeColor::Blue}};
    for (int v : nodes)
      if (v != a && v != b) p.blocks.push_back({v});
    p.blocks.push_back({a, b});
    return p;
  };

  // Four-node wheel: cycle plus hub.
  PlaneGraph w;
  for (int i = 0; i < 5; ++i) w.add_vertex(Role::Primal, 2 * i, 0);
  for (int i = 0; i < 4; ++i) w.add_edge(i, (i + 1) % 4, EdgeKind::PrimalEdge);
  for (int i = 0; i < 4; ++i) w.add_edge(i, 4, EdgeKind::PrimalEdge);
  auto cw = assemble_circular(w, {}, {0, 1, 2, 3});
  check_partition(cw, {{{0}, {1}, {2}, {3}}, {}}, "wheel singletons");
  for (auto [a, b] :
       {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 3}, std::pair{0, 3}})
    check_partition(cw, pair_partition(cw.nodes, a, b),
                    "wheel pair {" + std::to_string(a) + "," +
                        std::to_string(b) + "}");
  check_partition(cw,
                  {{{0, 1}, {2, 3}},
                   {{0, NodeColor::Blue},
                    {1, NodeColor::Red},
                    {2, NodeColor::Red},
                    {3, NodeColor::Blue}}},
                  "wheel pairs {0,1|2,3}");
  check_partition(cw,
                  {{{1, 2}, {3, 0}},
                   {{1, NodeColor::Blue},
                    {2, NodeColor::Red},
                    {3, NodeColor::Red},
                    {0, NodeColor::Blue}}},
                  "wheel pairs {1,2|3,0}");

  // Six-node wheel.
  PlaneGraph h;
  for (int i = 0; i < 7; ++i) h.add_vertex(Role::Primal, 2 * i, 0);
  for (int i = 0; i < 6; ++i) h.add_edge(i, (i + 1) % 6, EdgeKind::PrimalEdge);
  for (int i = 0; i < 6; ++i) h.add_edge(i, 6, EdgeKind::PrimalEdge);
  auto ch = assemble_circular(h, {}, {0, 1, 2, 3, 4, 5});
  check_partition(ch, {{{0}, {1}, {2}, {3}, {4}, {5}}, {}},
                  "hex singletons");
  for (auto [a, b] :
       {std::pair{0, 1}, std::pair{2, 3}, std::pair{4, 5}, std::pair{0, 5}})
    check_partition(ch, pair_partition(ch.nodes, a, b),
                    "hex pair {" + std::to_string(a) + "," +
                        std::to_string(b) + "}");
  check_partition(ch,
                  {{{0, 1}, {2, 3}, {4}, {5}},
                   {{0, NodeColor::Blue},
                    {1, NodeColor::Red},
                    {2, NodeColor::Red},
                    {3, NodeColor::Blue}}},
                  "hex pairs {0,1|2,3}");
  check_partition(ch,
                  {{{0, 5}, {1, 4}, {2, 3}},
                   {{0, NodeColor::Red},
                    {1, NodeColor::Red},
                    {2, NodeColor::Red},
                    {3, NodeColor::Blue},
                    {4, NodeColor::Blue},
                    {5, NodeColor::Blue}}},
                  "hex nested {0,5|1,4|2,3}");

  c.expect(checked >= 10, "fewer than 10 partitions checked");
  c.detail << (c.ok ? "" : "; ") << checked
           << " bipartite non-crossing partitions on two wheels";
  return {8, "grove determinants match exhaustive grove enumeration", c.ok,
          c.detail.str()};
}

// ---- criterion 9 ---------------------------------------------------------

CriterionResult tree_sampling_uniformity(bool full) {
  Check c;
  auto spec = GridSpec::rectangle(2, 2, 1, {{{1, 1}, Dir::W}});
  auto slots = walk_slots(spec);

  // Independent validity check of a slot assignment: every vertex's slot
  // chain must leave the grid without cycling.
  auto valid_key = [&](int key) {
    int slot[4];
    for (int v = 0; v < 4; ++v) slot[v] = (key >> (2 * v)) & 3;
    for (int v = 0; v < 4; ++v) {
      int seen = 0, cur = v;
      while (cur >= 0) {
        if (seen & (1 << cur)) return false;
        seen |= 1 << cur;
        cur = slots[cur][slot[cur]].neighbor;
      }
    }
    return true;
  };
  std::vector<int> categories;
  std::vector<int> category_of(256, -1);
  for (int key = 0; key < 256; ++key)
    if (valid_key(key)) {
      category_of[key] = static_cast<int>(categories.size());
      categories.push_back(key);
    }
  c.expect(categories.size() == 192,
           "valid slot assignments: " + std::to_string(categories.size()) +
               " != det K = 192");

  const long n = full ? 100000 : 20000;
  CounterRng rng(20260823);
  std::vector<long> observed(categories.size(), 0);
  bool all_valid = true;
  for (long i = 0; i < n; ++i) {
    auto s = wilson_sample(spec, rng);
    int key = 0;
    for (int v = 0; v < 4; ++v) key |= s.parent_slot[v] << (2 * v);
    if (category_of[key] < 0) {
      all_valid = false;
      break;
    }
    ++observed[category_of[key]];
  }
  c.expect(all_valid, "sampled an assignment with a cycle");

  const double expected = double(n) / double(categories.size());
  double stat = 0;
  for (long o : observed) stat += (o - expected) * (o - expected) / expected;
  const double p = chi_square_p(stat, static_cast<int>(categories.size()) - 1);
  c.expect(p > 0.001, "chi-square p = " + std::to_string(p) + " <= 0.001");

  auto st = ti_length_stats(spec, 0, n, 424242);
  const double mean = st.mean_length();
  double var = 0;
  for (size_t l = 0; l < st.length_counts.size(); ++l)
    var += (l - mean) * (l - mean) * st.length_counts[l];
  var /= n;
  c.expect(std::fabs(mean - 0.5) < 3 * std::sqrt(var / n),
           "mean component size " + std::to_string(mean) +
               " outside 3 sigma of 0.5");
  const double expected_membership[4] = {56.0 / 192, 16.0 / 192, 16.0 / 192,
                                         8.0 / 192};
  for (int v = 0; v < 4; ++v) {
    const double pv = expected_membership[v];
    const double sigma = std::sqrt(pv * (1 - pv) / n);
    c.expect(std::fabs(st.membership[v] / double(n) - pv) < 3 * sigma,
             "membership of vertex " + std::to_string(v) +
                 " outside 3 sigma");
  }
  c.detail << (c.ok ? "" : "; ") << n << " samples over "
           << categories.size() << " trees, chi-square p = " << p;
  return {9, "uniform tree sampling: chi-square, mean size and membership",
          c.ok, c.detail.str()};
}

// ---- criterion 10 --------------------------------------------------------

CriterionResult hitting_frequencies(bool full) {
  Check c;
  auto spec = GridSpec::rectangle(
      4, 4, 2, {{{2, 4}, Dir::S}, {{4, 2}, Dir::E}, {{2, 1}, Dir::N}});
  auto k = dirichlet_matrix(build_g1(spec));
  const long n = full ? 100000 : 20000;
  int pairs = 0;
  for (int term : {0, 1}) {
    const int t = primal_id(spec, spec.terminals[term].site);
    for (int x = 1; x <= 4; ++x)
      for (int y = 1; y <= 4; ++y) {
        if (term == 1 && (x + y) % 2 == 0) continue;  // 24 pairs total
        const double exact = static_cast<double>(
            k.inverse_entry(primal_id(spec, {x, y}), t));
        const double est = srw_hitting_estimate(
            spec, {x, y}, term, n, 777000 + 100 * term + 10 * x + y);
        const double sigma = std::sqrt(exact * (1 - exact) / n);
        c.expect(std::fabs(est - exact) < 3 * sigma,
                 "pair ((" + std::to_string(x) + "," + std::to_string(y) +
                     "), t" + std::to_string(term + 1) + "): " +
                     std::to_string(est) + " vs " + std::to_string(exact));
        ++pairs;
      }
  }
  c.expect(pairs >= 20, "fewer than 20 pairs checked");
  c.detail << (c.ok ? "" : "; ") << pairs << " start/terminal pairs, " << n
           << " walks each, all within 3 sigma";
  return {10, "random-walk hitting frequencies match inverse entries", c.ok,
          c.detail.str()};
}

// ---- criteria 11-13 ------------------------------------------------------

CriterionResult chain_decay(bool) {
  Check c;
  auto a = chain_asymptotics(40);
  const double rate = 1.0 / (2 + std::sqrt(3.0));
  for (int j = 5; j <= 15; ++j)
    c.expect(std::fabs(a.ratio[j - 1] - rate) < 0.01 * rate,
             "ratio at j=" + std::to_string(j) + " off by more than 1%");
  c.expect(std::fabs(a.fitted_rate - rate) < 0.01 * rate,
           "fitted rate " + std::to_string(a.fitted_rate) + " off");
  c.detail << (c.ok ? "" : "; ") << "n=40 chain, fitted rate "
           << a.fitted_rate << " vs 1/(2+sqrt 3) = " << rate;
  return {11, "chain weights decay at rate 1/(2+sqrt(3))", c.ok,
          c.detail.str()};
}

CriterionResult logarithmic_growth(bool full) {
  Check c;
  const double target = 2 / std::numbers::pi;
  const double slope =
      (expected_ti_length(512) - expected_ti_length(256)) / std::log(2.0);
  c.expect(std::fabs(slope - target) < 0.1 * target,
           "slope " + std::to_string(slope) + " not within 10% of 2/pi");
  std::vector<int> exact_ns = {8};
  if (full) exact_ns.push_back(16);
  for (int n : exact_ns) {
    auto spec = GridSpec::rectangle(n, n, 1, {{{1, 1}, Dir::W}});
    auto k = dirichlet_matrix(build_g1(spec));
    const int t = primal_id(spec, {1, 1});
    const auto& col = k.inverse_column(t);
    double exact_sum = 0;
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y) {
        const double exact =
            static_cast<double>(col[k.index_of(primal_id(spec, {x, y}))]);
        c.expect(std::fabs(spectral_entry(n, n, x, y) - exact) < 1e-10,
                 "spectral entry off at n=" + std::to_string(n));
        exact_sum += exact;
      }
    c.expect(std::fabs(expected_ti_length(n) - exact_sum) < 1e-10,
             "mode sum differs from the exact column sum at n=" +
                 std::to_string(n));
  }
  c.detail << (c.ok ? "" : "; ") << "slope at n=256: " << slope << " vs "
           << target << "; spectral entries exact to 1e-10";
  return {12, "expected component size grows like (2/pi) log n", c.ok,
          c.detail.str()};
}

CriterionResult tail_concentration(bool) {
  Check c;
  auto rect = concentration_profile({8, 16, 32}, 0.25);
  c.expect(rect.size() == 3 && rect[0].tail_mass > rect[1].tail_mass &&
               rect[1].tail_mass > rect[2].tail_mass,
           "square-grid tail mass is not strictly decreasing");
  auto chain =
      concentration_profile({8, 16, 32}, 0.25, GridSpec::Shape::Chain);
  c.expect(chain[1].tail_mass < 0.5 * chain[0].tail_mass &&
               chain[2].tail_mass < 0.5 * chain[1].tail_mass,
           "chain tail mass decays slower than geometrically");
  c.expect(chain[2].tail_mass > 0, "chain tail vanished");
  c.detail << (c.ok ? "" : "; ") << "square tails "
           << rect[0].tail_mass << " > " << rect[1].tail_mass << " > "
           << rect[2].tail_mass << "; chain ratios below 1/2";
  return {13, "tail mass concentrates near the terminal", c.ok,
          c.detail.str()};
}

// ---- criterion 14 --------------------------------------------------------

std::pair<int, std::string> run_capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return {-1, out};
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  return {pclose(pipe), out};
}

CriterionResult cli_determinism(bool, const std::string& cli_path) {
  Check c;
  if (cli_path.empty())
    return {14, "command-line output is byte-identical across repeated runs",
            false, "no executable path supplied"};
  const std::string exe = "'" + cli_path + "'";
  const std::vector<std::string> commands = {
      exe + " count --shape rect:2x2 --k 1 --terminal 1,1:N --at 2,2",
      exe + " sample ust --shape rect:3x3 --terminal 1,1:W --n 2000 --seed 7",
      exe + " dist --shape rect:2x2 --terminal 1,1:W --format csv",
  };
  for (const auto& cmd : commands) {
    auto first = run_capture(cmd);
    auto second = run_capture(cmd);
    c.expect(first.first == 0, "nonzero exit: " + cmd + "\n" + first.second);
    c.expect(!first.second.empty(), "empty output: " + cmd);
    c.expect(first.second == second.second,
             "outputs differ between runs: " + cmd);
    c.expect(first.first == second.first, "exit codes differ: " + cmd);
  }
  c.detail << (c.ok ? "" : "; ") << commands.size()
           << " commands run twice, outputs byte-identical";
  return {14, "command-line output is byte-identical across repeated runs",
          c.ok, c.detail.str()};
}

CriterionResult guard(const std::function<CriterionResult()>& fn, int id,
                      const std::string& name, double budget_seconds) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r = {id, name, false, std::string("exception: ") + e.what()};
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (budget_seconds > 0 && elapsed > budget_seconds) {
    r.passed = false;
    r.detail += "; exceeded the " + std::to_string(budget_seconds) +
                "s budget";
  }
  std::ostringstream d;
  d << r.detail << " (" << std::fixed;
  d.precision(2);
  d << elapsed << "s)";
  r.detail = d.str();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                            const std::string& cli_path) {
  const bool full = suite != "small";
  std::vector<CriterionResult> out;
  auto add = [&](int id, const std::string& name, double budget,
                 const std::function<CriterionResult()>& fn) {
    out.push_back(guard(fn, id, name, budget));
  };
  add(1, "census multiplicity", 300, [&] { return census_multiplicity(full); });
  add(2, "normalization", 0, [&] { return normalization_resolution(full); });
  add(3, "two-impurity routes", 120, [&] { return two_boundary_routes(full); });
  add(4, "near-boundary correction", 0,
      [&] { return near_boundary_correction(full); });
  add(5, "three-impurity routes", 0,
      [&] { return three_boundary_impurities(full); });
  add(6, "perturbation identities", 0,
      [&] { return perturbation_identities(full); });
  add(7, "tree determinant", 0, [&] { return tree_determinant(full); });
  add(8, "grove determinants", 0, [&] { return grove_determinants(full); });
  add(9, "tree sampling", 180, [&] { return tree_sampling_uniformity(full); });
  add(10, "hitting frequencies", 0, [&] { return hitting_frequencies(full); });
  add(11, "chain decay", 0, [&] { return chain_decay(full); });
  add(12, "logarithmic growth", 0, [&] { return logarithmic_growth(full); });
  add(13, "tail concentration", 0, [&] { return tail_concentration(full); });
  add(14, "CLI determinism", 0,
      [&] { return cli_determinism(full, cli_path); });
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace impdimer
