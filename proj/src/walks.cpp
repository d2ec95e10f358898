#include "impdimer/walks.hpp"

#include <cmath>
#include <stdexcept>

#include "impdimer/lattice.hpp"

namespace impdimer {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::next() {
  return mix64(seed_ + 0x9e3779b97f4a7c15ULL * ++counter_);
}

double CounterRng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<std::array<SlotTarget, 4>> walk_slots(const GridSpec& spec) {
  spec.validate();
  std::vector<std::array<SlotTarget, 4>> slots(spec.width() * spec.height());
  const Dir dirs[4] = {Dir::N, Dir::E, Dir::S, Dir::W};
  for (int y = 1; y <= spec.height(); ++y)
    for (int x = 1; x <= spec.width(); ++x) {
      auto& s = slots[primal_id(spec, {x, y})];
      for (int d = 0; d < 4; ++d) {
        Coord to{x + dir_dx(dirs[d]), y + dir_dy(dirs[d])};
        if (spec.contains(to)) s[d].neighbor = primal_id(spec, to);
      }
    }
  for (size_t i = 0; i < spec.terminals.size(); ++i) {
    const auto& t = spec.terminals[i];
    auto& s = slots[primal_id(spec, t.site)];
    const int d = static_cast<int>(t.dir);
    if (s[d].neighbor != -1)
      throw std::logic_error("terminal slot occupied by a neighbor");
    s[d].terminal = static_cast<int>(i);
  }
  return slots;
}

TreeSample wilson_sample(const GridSpec& spec, CounterRng& rng) {
  const auto slots = walk_slots(spec);
  const int nv = static_cast<int>(slots.size());
  TreeSample out;
  out.parent_slot.assign(nv, -1);
  std::vector<char> in_tree(nv, 0);
  std::vector<int> choice(nv, -1);
  for (int start = 0; start < nv; ++start) {
    if (in_tree[start]) continue;
    // Loop-erased walk: remembering only the last exit slot per vertex
    // erases loops implicitly.
    int v = start;
    while (!in_tree[v]) {
      const int d = rng.uniform_slot();
      choice[v] = d;
      const int w = slots[v][d].neighbor;
      if (w == -1) break;  // reached the outer root
      v = w;
    }
    // Freeze the loop-erased path.
    v = start;
    while (!in_tree[v]) {
      in_tree[v] = 1;
      out.parent_slot[v] = choice[v];
      const int w = slots[v][choice[v]].neighbor;
      if (w == -1) break;
      v = w;
    }
  }
  return out;
}

std::vector<int> exit_terminal(const GridSpec& spec, const TreeSample& s) {
  const auto slots = walk_slots(spec);
  const int nv = static_cast<int>(slots.size());
  std::vector<int> exit(nv, -2);
  for (int v = 0; v < nv; ++v) {
    // Walk up until a classified vertex or an exit slot.
    std::vector<int> path;
    int u = v;
    while (exit[u] == -2) {
      path.push_back(u);
      const SlotTarget& t = slots[u][s.parent_slot[u]];
      if (t.neighbor == -1) {
        exit[u] = t.terminal;
        break;
      }
      u = t.neighbor;
    }
    for (int p : path) exit[p] = exit[u];
  }
  return exit;
}

std::vector<int> lerw(const GridSpec& spec, Coord from,
                      const std::vector<Coord>& targets, CounterRng& rng) {
  const auto slots = walk_slots(spec);
  std::vector<char> is_target(slots.size(), 0);
  for (Coord t : targets) is_target[primal_id(spec, t)] = 1;
  std::vector<int> path = {primal_id(spec, from)};
  std::vector<int> at(slots.size(), -1);  // position in path, or -1
  at[path[0]] = 0;
  while (!is_target[path.back()]) {
    const int w = slots[path.back()][rng.uniform_slot()].neighbor;
    if (w == -1) break;  // absorbed at the root
    if (at[w] >= 0) {
      while (static_cast<int>(path.size()) > at[w] + 1) {
        at[path.back()] = -1;
        path.pop_back();
      }
    } else {
      at[w] = static_cast<int>(path.size());
      path.push_back(w);
    }
  }
  return path;
}

std::vector<int> terminal_component(const GridSpec& spec, const TreeSample& s,
                                    int terminal_index) {
  auto exit = exit_terminal(spec, s);
  std::vector<int> out;
  for (size_t v = 0; v < exit.size(); ++v)
    if (exit[v] == terminal_index) out.push_back(static_cast<int>(v));
  return out;
}

double TiLengthStats::mean_length() const {
  if (samples == 0) return 0.0;
  double s = 0;
  for (size_t l = 0; l < length_counts.size(); ++l)
    s += static_cast<double>(l) * static_cast<double>(length_counts[l]);
  return s / static_cast<double>(samples);
}

TiLengthStats ti_length_stats(const GridSpec& spec, int terminal_index,
                              long samples, std::uint64_t seed) {
  const int nv = spec.width() * spec.height();
  TiLengthStats st;
  st.samples = samples;
  st.length_counts.assign(nv + 1, 0);
  st.membership.assign(nv, 0);
  CounterRng rng(seed);
  for (long i = 0; i < samples; ++i) {
    auto tree = wilson_sample(spec, rng);
    auto comp = terminal_component(spec, tree, terminal_index);
    ++st.length_counts[comp.size()];
    for (int v : comp) ++st.membership[v];
  }
  return st;
}

double srw_hitting_estimate(const GridSpec& spec, Coord from,
                            int terminal_index, long walks,
                            std::uint64_t seed) {
  const auto slots = walk_slots(spec);
  const int start = primal_id(spec, from);
  CounterRng rng(seed);
  long hits = 0;
  for (long i = 0; i < walks; ++i) {
    int v = start;
    for (;;) {
      const SlotTarget& t = slots[v][rng.uniform_slot()];
      if (t.neighbor == -1) {
        hits += t.terminal == terminal_index;
        break;
      }
      v = t.neighbor;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(walks);
}

namespace {

// Regularized incomplete gamma functions (series / continued fraction).
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a, term = sum, ap = a;
  for (int i = 0; i < 500; ++i) {
    term *= x / ++ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi_square_p(double statistic, int df) {
  if (statistic <= 0) return 1.0;
  const double a = 0.5 * df, x = 0.5 * statistic;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

}  // namespace impdimer
