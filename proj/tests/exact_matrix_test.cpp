#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "impdimer/exact_matrix.hpp"
#include "impdimer/lattice.hpp"

using namespace impdimer;

namespace {

ExactMatrix k_for(const GridSpec& spec) {
  return dirichlet_matrix(build_g1(spec));
}

GridSpec rect(int n, int m) {
  return GridSpec::rectangle(n, m, 1, {{{1, 1}, Dir::W}});
}

GridSpec chain(int n) { return GridSpec::chain(n, 1, {{{1, 1}, Dir::N}}); }

}  // namespace

TEST_CASE("determinants of the 4I - A matrix") {
  CHECK(det_exact(k_for(rect(2, 2))) == Rational(192));
  CHECK(det_exact(k_for(rect(4, 4))) == Rational(557568000));
  CHECK(det_exact(k_for(rect(4, 5))) == Rational(Int("74795194705")));
  CHECK(det_exact(k_for(rect(3, 6))) == Rational(Int("7022359583")));
  CHECK(det_exact(k_for(chain(3))) == Rational(56));
  CHECK(det_exact(k_for(chain(7))) == Rational(10864));
}

TEST_CASE("inverse entries on the 2x2 grid") {
  auto spec = rect(2, 2);
  auto k = k_for(spec);
  const int t = primal_id(spec, {1, 1});
  CHECK(k.inverse_entry(t, t) == Rational(7, 24));
  // Symmetry and row identity K K^{-1} = I.
  const int u = primal_id(spec, {2, 2});
  CHECK(k.inverse_entry(t, u) == k.inverse_entry(u, t));
  for (int col : k.ids()) {
    for (int row : k.ids()) {
      Rational s(0);
      for (int mid : k.ids()) s += k.at(row, mid) * k.inverse_entry(mid, col);
      CHECK(s == Rational(row == col ? 1 : 0));
    }
  }
}

TEST_CASE("solve returns the exact solution") {
  auto spec = rect(3, 3);
  auto k = k_for(spec);
  std::vector<Rational> rhs(k.dim());
  for (int i = 0; i < k.dim(); ++i) rhs[i] = Rational(2 * i - 3, i + 1);
  auto x = k.solve(rhs);
  REQUIRE((int)x.size() == k.dim());
  for (int i = 0; i < k.dim(); ++i) {
    Rational s(0);
    for (int j = 0; j < k.dim(); ++j) s += k.raw()(i, j) * x[j];
    CHECK(s == rhs[i]);
  }
}

TEST_CASE("adjugate entries are integers") {
  auto k = k_for(rect(3, 3));
  const Rational d = k.det();
  for (int a : k.ids())
    for (int b : k.ids()) CHECK(is_integer(k.inverse_entry(a, b) * d));
}

TEST_CASE("rational pivoting handles zero leading entries") {
  ExactMatrix m({0, 1, 2});
  m.at(0, 0) = 0;
  m.at(0, 1) = Rational(1, 2);
  m.at(0, 2) = 1;
  m.at(1, 0) = 2;
  m.at(1, 1) = 0;
  m.at(1, 2) = Rational(1, 3);
  m.at(2, 0) = 1;
  m.at(2, 1) = 1;
  m.at(2, 2) = 0;
  // det = 0*(0*0-1/3*1) - 1/2*(0-1/3) + 1*(2-0) = 1/6 + 2 = 13/6.
  CHECK(m.det() == Rational(13, 6));
  ExactMatrix sing({0, 1});
  sing.at(0, 0) = 1;
  sing.at(0, 1) = 2;
  sing.at(1, 0) = 2;
  sing.at(1, 1) = 4;
  CHECK(sing.det() == Rational(0));
}
