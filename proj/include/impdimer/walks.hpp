#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "impdimer/grid_spec.hpp"

namespace impdimer {

// Counter-based generator: output n is a fixed 64-bit mix of (seed, n),
// so streams are reproducible and independent of call order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
  // One of the four lattice slots, each with probability exactly 1/4.
  int uniform_slot() { return static_cast<int>(next() >> 62); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Where a slot leads. Every primal vertex has exactly four slots, indexed
// by direction (N, E, S, W); slots leaving the grid are exits.
struct SlotTarget {
  int neighbor = -1;  // primal vertex id, or -1 when the slot exits
  int terminal = -1;  // for exits: terminal index, or -1 for a plain exit
};

std::vector<std::array<SlotTarget, 4>> walk_slots(const GridSpec& spec);

// A spanning tree rooted outside the grid: every vertex keeps the slot its
// root path leaves through. Sampled uniformly by Wilson's algorithm with
// loop-erased walks.
struct TreeSample {
  std::vector<int> parent_slot;  // slot index per primal vertex
};

TreeSample wilson_sample(const GridSpec& spec, CounterRng& rng);

// Exit slot classification of every vertex's root path: terminal index or
// -1 for a plain exit.
std::vector<int> exit_terminal(const GridSpec& spec, const TreeSample& s);

// Vertices whose root path leaves through the given terminal's slot.
std::vector<int> terminal_component(const GridSpec& spec, const TreeSample& s,
                                    int terminal_index);

// Loop-erased random walk from `from`, absorbed at any target vertex or
// when a slot exits the grid. Returns the self-avoiding path of primal
// vertex ids (cycles erased in chronological order).
std::vector<int> lerw(const GridSpec& spec, Coord from,
                      const std::vector<Coord>& targets, CounterRng& rng);

struct TiLengthStats {
  long samples = 0;
  std::vector<long> length_counts;  // index = component size
  std::vector<long> membership;     // per primal vertex id
  double mean_length() const;
};

TiLengthStats ti_length_stats(const GridSpec& spec, int terminal_index,
                              long samples, std::uint64_t seed);

// Fraction of simple random walks from `from` that exit the grid through
// the given terminal's slot.
double srw_hitting_estimate(const GridSpec& spec, Coord from,
                            int terminal_index, long walks,
                            std::uint64_t seed);

// Upper-tail p-value of Pearson's chi-square statistic.
double chi_square_p(double statistic, int df);

}  // namespace impdimer
