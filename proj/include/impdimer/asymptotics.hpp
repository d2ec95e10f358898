#pragma once

#include <vector>

#include "impdimer/grid_spec.hpp"
#include "impdimer/rational.hpp"

namespace impdimer {

// Green-function entry A^{(n,m)}((x,y),(1,1)) = K^{-1}((x,y),(1,1)) of the
// n x m grid, via the sine eigenbasis of the Dirichlet Laplacian.
double spectral_entry(int n, int m, int x, int y);

// Infinite-volume limit A(x,y): tensor-product midpoint quadrature of
//   (2/pi^2) int_0^pi int_0^pi sin(tx) sin(py) sin(t) sin(p) /
//                              (2 - cos t - cos p) dt dp.
// resolution <= 0 doubles the rule from 64 points per axis until two
// successive estimates differ by less than 1e-6.
double continuum_entry(int x, int y, int resolution = 0);

// E[l_T] = sum_{x,y} A^{(n,n)}((x,y),(1,1)) on the n x n grid with the
// terminal at the corner, reduced to the odd-mode double sum.
double expected_ti_length(int n);

struct ChainAsymptotics {
  int n = 0;
  std::vector<Rational> probability;  // P(I1 = j), j = 1..n
  std::vector<double> ratio;          // probability[j+1] / probability[j]
  double fitted_rate = 0;             // geometric mean of the mid ratios
};

// One-impurity chain with the terminal at vertex 1: exact weights plus the
// geometric decay rate (limit 1/(2+sqrt(3))).
ChainAsymptotics chain_asymptotics(int n);

struct ConcentrationRow {
  int n = 0;
  double tail_mass = 0;  // P(|r| >= c*n), sup-norm distance from the terminal
};

// Tail mass of the one-impurity distribution outside the box of side c*n
// around the terminal corner, for each n. Rectangle uses the n x n grid
// (exact rationals for n <= 16, spectral doubles above); chains are exact.
std::vector<ConcentrationRow> concentration_profile(
    const std::vector<int>& ns, double c,
    GridSpec::Shape shape = GridSpec::Shape::Rectangle);

}  // namespace impdimer
