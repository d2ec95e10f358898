#include "impdimer/counts.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "impdimer/exact_matrix.hpp"
#include "impdimer/lattice.hpp"

namespace impdimer {

namespace {

// One row of the count determinant: a weighted group of primal vertices.
using RowGroup = std::vector<std::pair<int, Rational>>;

// |det M| with M(i, j) = sum over the i-th row group of w * inv(v, cols[j]),
// where inv is any exact matrix-inverse accessor.
template <typename InverseEntry>
Rational abs_minor_det(const std::vector<RowGroup>& rows,
                       const std::vector<int>& cols, InverseEntry inv) {
  const int d = static_cast<int>(rows.size());
  std::vector<int> ix(d);
  for (int i = 0; i < d; ++i) ix[i] = i;
  ExactMatrix m(ix);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Rational s(0);
      for (const auto& [v, w] : rows[i]) s += w * inv(v, cols[j]);
      m.at(i, j) = s;
    }
  return abs(m.det());
}

std::vector<int> terminal_ids(const GridSpec& spec) {
  std::vector<int> out;
  for (const auto& t : spec.terminals) out.push_back(primal_id(spec, t.site));
  return out;
}

void require_boundary(const GridSpec& spec, Coord c, const char* name) {
  if (!spec.contains(c))
    throw std::invalid_argument(std::string(name) + " is outside the grid");
  if (!spec.on_boundary(c))
    throw std::invalid_argument(std::string(name) +
                                " is not on the grid boundary");
}

// Arc row (unit weight per member) between a and b; empty members give a
// zero row and hence a zero determinant.
RowGroup arc_row(const GridSpec& spec, const BoundaryArc& arc) {
  RowGroup row;
  for (Coord y : arc.members) row.push_back({primal_id(spec, y), 1});
  return row;
}

Int clear_int(const Rational& q) {
  if (!is_integer(q))
    throw std::logic_error("count determinant did not clear denominators");
  return to_integer(q);
}

}  // namespace

CountResult count_one_impurity(const GridSpec& spec, Coord x) {
  spec.validate();
  if (spec.k != 1)
    throw std::invalid_argument("single-impurity count needs k = 1");
  if (!spec.contains(x))
    throw std::invalid_argument("impurity position is outside the grid");
  auto k = dirichlet_matrix(build_g1(spec));
  const int t = primal_id(spec, spec.terminals[0].site);
  CountResult r;
  r.value = clear_int(abs(k.inverse_entry(primal_id(spec, x), t) * k.det()));
  r.route = "cofactor";
  return r;
}

CountResult count_two_boundary(const GridSpec& spec, Coord a, Coord b) {
  spec.validate();
  if (spec.k != 2) throw std::invalid_argument("two-impurity count needs k = 2");
  require_boundary(spec, a, "a");
  require_boundary(spec, b, "b");
  const BoundaryArc arc = boundary_arc(spec, a, b);
  auto k = dirichlet_matrix(build_g1(spec));
  const auto ts = terminal_ids(spec);
  const std::vector<RowGroup> rows = {{{primal_id(spec, a), 1}},
                                      arc_row(spec, arc),
                                      {{primal_id(spec, b), 1}}};
  CountResult r;
  if (arc.members.empty()) {
    r.value = 0;  // the arc row is the zero vector
  } else {
    auto inv = [&](int v, int c) { return k.inverse_entry(v, c); };
    r.value = clear_int(abs_minor_det(rows, ts, inv) * abs(k.det()));
  }
  r.route = "cofactor";
  return r;
}

CountResult count_two_near_boundary(const GridSpec& spec, Coord a, Coord b) {
  spec.validate();
  if (spec.k != 2) throw std::invalid_argument("two-impurity count needs k = 2");
  require_boundary(spec, a, "a");
  require_boundary(spec, b, "b");
  const BoundaryArc arc = boundary_arc(spec, a, b);

  // c: the boundary vertex diagonally adjacent to the first impurity's
  // interior dual endpoint -- the boundary neighbor of a on the arc side,
  // or on the far side when a and b are adjacent.
  Coord c;
  if (!arc.members.empty()) {
    c = arc.members.front();
  } else {
    const auto cycle = boundary_cycle(spec);
    const int n = static_cast<int>(cycle.size());
    int ia = -1;
    for (int i = 0; i < n; ++i)
      if (cycle[i] == a) ia = i;
    const Coord next = cycle[(ia + 1) % n];
    const Coord prev = cycle[(ia + n - 1) % n];
    c = (next == b) ? prev : next;
  }
  if (c == b)
    throw std::invalid_argument(
        "c is undefined: the diagonal boundary neighbor coincides with b");

  auto k = dirichlet_matrix(build_g1(spec));
  const auto ts = terminal_ids(spec);
  auto inv = [&](int v, int col) { return k.inverse_entry(v, col); };
  const int ida = primal_id(spec, a), idb = primal_id(spec, b),
            idc = primal_id(spec, c);

  Int a_term = 0;
  if (!arc.members.empty()) {
    const std::vector<RowGroup> a_rows = {
        {{ida, 1}}, arc_row(spec, arc), {{idb, 1}}};
    a_term = clear_int(abs_minor_det(a_rows, ts, inv) * abs(k.det()));
  }
  const std::vector<RowGroup> b_rows = {{{ida, 1}}, {{idb, 1}}, {{idc, 1}}};
  const Int b_term = clear_int(abs_minor_det(b_rows, ts, inv) * abs(k.det()));

  CountResult r;
  r.value = a_term + b_term;
  r.route = "cofactor";
  r.decomposition = {{"A", a_term}, {"B", b_term}};
  return r;
}

CountResult count_k_boundary(const GridSpec& spec,
                             const std::vector<Coord>& a) {
  spec.validate();
  const int k = spec.k;
  if (k < 2) throw std::invalid_argument("boundary-impurity count needs k >= 2");
  if (static_cast<int>(a.size()) != k)
    throw std::invalid_argument("impurity list must have exactly k positions");
  for (const Coord& c : a) require_boundary(spec, c, "impurity");

  // Distinct positions must follow the boundary cycle's circular order;
  // repeats are allowed and give equal determinant rows (count 0).
  const bool distinct =
      std::set(a.begin(), a.end()).size() == a.size();
  if (distinct && k > 2) {
    const auto cycle = boundary_cycle(spec);
    std::vector<int> pos;
    for (const Coord& c : a)
      pos.push_back(static_cast<int>(
          std::find(cycle.begin(), cycle.end(), c) - cycle.begin()));
    for (int j = 1; j < k; ++j) {
      const int d = (pos[j] - pos[0] + static_cast<int>(cycle.size())) %
                    static_cast<int>(cycle.size());
      const int dprev = (pos[j - 1] - pos[0] + static_cast<int>(cycle.size())) %
                        static_cast<int>(cycle.size());
      if (j > 1 && d <= dprev)
        throw std::invalid_argument(
            "impurities must be listed in boundary order");
    }
  }

  auto km = dirichlet_matrix(build_g1(spec));
  const auto ts = terminal_ids(spec);
  std::vector<RowGroup> rows;
  for (const Coord& c : a) rows.push_back({{primal_id(spec, c), 1}});
  bool zero_row = false;
  for (int j = 0; j + 1 < k; ++j) {
    if (a[j] == a[j + 1]) {
      rows.push_back({});  // degenerate arc between coincident impurities
      zero_row = true;
      continue;
    }
    const BoundaryArc arc = boundary_arc(spec, a[j], a[j + 1]);
    if (arc.members.empty()) zero_row = true;
    rows.push_back(arc_row(spec, arc));
  }

  CountResult r;
  if (zero_row || !distinct) {
    r.value = 0;
  } else {
    auto inv = [&](int v, int col) { return km.inverse_entry(v, col); };
    r.value = clear_int(abs_minor_det(rows, ts, inv) * abs(km.det()));
  }
  r.route = "cofactor";
  return r;
}

CountResult count_chain(const GridSpec& spec, const ImpurityConfig& config) {
  spec.validate();
  if (spec.shape != GridSpec::Shape::Chain)
    throw std::invalid_argument("chain count needs a chain grid");
  const int k = spec.k;
  if (static_cast<int>(config.i1.size()) != k)
    throw std::invalid_argument("impurity list must have exactly k positions");
  std::vector<DualClass> cls = config.dual_class;
  if (cls.empty()) cls.assign(k, DualClass::Boundary);
  if (static_cast<int>(cls.size()) != k)
    throw std::invalid_argument("dual classes must match the impurity count");
  for (DualClass c : cls)
    if (c == DualClass::Interior)
      throw std::invalid_argument(
          "chain dual vertices are never interior: use Boundary or "
          "NearBoundary");
  for (const Coord& c : config.i1) {
    if (!spec.contains(c))
      throw std::invalid_argument("impurity position is outside the chain");
    if (spec.has_terminal_at(c))
      throw std::invalid_argument(
          "impurity position coincides with a terminal site");
  }

  if (k == 1) {
    // Both dual rows give the same per-configuration count.
    CountResult r = count_one_impurity(spec, config.i1[0]);
    r.route = "grove";
    return r;
  }

  std::vector<int> tx;
  for (const auto& t : spec.terminals) tx.push_back(t.site.x);
  if (!std::is_sorted(tx.begin(), tx.end()))
    throw std::invalid_argument("chain terminals must be listed left to right");
  for (int j = 0; j + 1 < k; ++j)
    if (config.i1[j].x >= config.i1[j + 1].x)
      throw std::invalid_argument(
          "chain impurities must be listed left to right");

  auto km = dirichlet_matrix(build_g1(spec));
  const auto ts = terminal_ids(spec);
  auto inv = [&](int v, int col) { return km.inverse_entry(v, col); };
  auto idx = [&](int x) { return primal_id(spec, {x, 1}); };

  // Base term: rows a_1..a_k plus one unit-weight row per gap, summing
  // every chain vertex strictly between consecutive impurities (terminal
  // sites included).
  std::vector<RowGroup> rows;
  for (const Coord& c : config.i1) rows.push_back({{idx(c.x), 1}});
  bool zero_row = false;
  for (int j = 0; j + 1 < k; ++j) {
    RowGroup gap;
    for (int x = config.i1[j].x + 1; x < config.i1[j + 1].x; ++x)
      gap.push_back({idx(x), 1});
    if (gap.empty()) zero_row = true;
    rows.push_back(gap);
  }
  const Int a_term =
      zero_row ? Int(0)
               : clear_int(abs_minor_det(rows, ts, inv) * abs(km.det()));

  CountResult r;
  r.route = "grove";
  r.decomposition = {{"A", a_term}};
  r.value = a_term;

  const int near = static_cast<int>(
      std::count(cls.begin(), cls.end(), DualClass::NearBoundary));
  if (near == 0) return r;
  if (k != 2)
    throw std::invalid_argument(
        "terminal-side dual endpoints are supported for chains with k <= 2");

  // Correction per impurity whose dual endpoint lies on the terminal side:
  // the adjacent terminal pair joins that impurity's tree.
  const int ida = idx(config.i1[0].x), idb = idx(config.i1[1].x);
  if (cls[0] == DualClass::NearBoundary) {
    const Int c_term = clear_int(
        abs_minor_det({{{ts[0], 1}}, {{ts[2], 1}}}, {ts[1], idb}, inv) *
        abs(km.det()));
    r.decomposition.push_back({"C_a", c_term});
    r.value += c_term;
  }
  if (cls[1] == DualClass::NearBoundary) {
    const Int c_term = clear_int(
        abs_minor_det({{{ts[0], 1}}, {{ts[2], 1}}}, {ida, ts[1]}, inv) *
        abs(km.det()));
    r.decomposition.push_back({"C_b", c_term});
    r.value += c_term;
  }
  return r;
}

CountResult hitting_matrix_count(const GridSpec& spec, Coord a, Coord b) {
  spec.validate();
  if (spec.k != 2) throw std::invalid_argument("two-impurity count needs k = 2");
  require_boundary(spec, a, "a");
  require_boundary(spec, b, "b");
  const BoundaryArc arc = boundary_arc(spec, a, b);

  // I - Q assembled straight from the grid adjacency: the walk steps to
  // each of the 4 slots with probability 1/4, so Q(x, y) = 1/4 per edge.
  std::vector<int> ids;
  for (int i = 0; i < spec.width() * spec.height(); ++i) ids.push_back(i);
  ExactMatrix imq(ids);
  for (int y = 1; y <= spec.height(); ++y)
    for (int x = 1; x <= spec.width(); ++x) {
      const int v = primal_id(spec, {x, y});
      imq.at(v, v) = 1;
      for (auto [dx, dy] : {std::pair{1, 0}, std::pair{-1, 0},
                            std::pair{0, 1}, std::pair{0, -1}}) {
        const Coord w{x + dx, y + dy};
        if (spec.contains(w)) imq.at(v, primal_id(spec, w)) = Rational(-1, 4);
      }
    }

  // H = (I - Q)^{-1} / 4 and det K = 4^N det(I - Q).
  auto hmat = [&](int v, int col) {
    return imq.inverse_entry(v, col) * Rational(1, 4);
  };
  Rational det_k = imq.det();
  for (int i = 0; i < imq.dim(); ++i) det_k *= 4;

  const auto ts = terminal_ids(spec);
  const std::vector<RowGroup> rows = {{{primal_id(spec, a), 1}},
                                      arc_row(spec, arc),
                                      {{primal_id(spec, b), 1}}};
  CountResult r;
  r.value = arc.members.empty()
                ? Int(0)
                : clear_int(abs_minor_det(rows, ts, hmat) * abs(det_k));
  r.route = "hitting";
  return r;
}

ImpurityDistribution impurity_distribution(const GridSpec& spec,
                                           Normalization norm) {
  spec.validate();
  if (spec.k != 1)
    throw std::invalid_argument("impurity distribution needs k = 1");
  auto k = dirichlet_matrix(build_g1(spec));
  const int t = primal_id(spec, spec.terminals[0].site);

  ImpurityDistribution out;
  out.normalization = norm;
  out.det_k = clear_int(abs(k.det()));

  Rational sum_a(0);
  std::vector<Rational> entries;
  const int nv = spec.width() * spec.height();
  for (int v = 0; v < nv; ++v) {
    const Rational av = abs(k.inverse_entry(v, t));
    entries.push_back(av);
    sum_a += av;
  }
  const Rational denom = 4 * sum_a + 2;
  for (int v = 0; v < nv; ++v) {
    DistributionRow row;
    row.site = primal_coord(spec, v);
    row.weight = clear_int(abs(entries[v] * k.det()));
    row.probability = (norm == Normalization::Resolved ? 4 * entries[v]
                                                       : entries[v]) /
                      denom;
    out.rows.push_back(row);
  }
  out.terminal_probability =
      norm == Normalization::Resolved ? Rational(2) / denom : Rational(0);
  return out;
}

}  // namespace impdimer
