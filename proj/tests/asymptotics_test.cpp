#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "impdimer/asymptotics.hpp"
#include "impdimer/exact_matrix.hpp"
#include "impdimer/lattice.hpp"

using namespace impdimer;

TEST_CASE("spectral entries match the exact inverse") {
  CHECK(std::fabs(spectral_entry(2, 2, 1, 1) - 7.0 / 24) < 1e-12);
  CHECK(std::fabs(spectral_entry(2, 2, 2, 2) - 1.0 / 24) < 1e-12);
  CHECK(std::fabs(spectral_entry(5, 5, 2, 4) - spectral_entry(5, 5, 4, 2)) <
        1e-12);

  auto spec = GridSpec::rectangle(5, 5, 1, {{{1, 1}, Dir::W}});
  auto k = dirichlet_matrix(build_g1(spec));
  const int t = primal_id(spec, {1, 1});
  for (int x = 1; x <= 5; ++x)
    for (int y = 1; y <= 5; ++y) {
      const double exact = static_cast<double>(
          k.inverse_entry(primal_id(spec, {x, y}), t));
      CHECK(std::fabs(spectral_entry(5, 5, x, y) - exact) < 1e-10);
    }

  CHECK_THROWS(spectral_entry(3, 3, 4, 1));
}

TEST_CASE("continuum entries are symmetric, positive limits") {
  const double a11 = continuum_entry(1, 1);
  CHECK(a11 > 0);
  CHECK(std::fabs(continuum_entry(2, 3) - continuum_entry(3, 2)) < 1e-9);
  for (int x = 1; x <= 4; ++x)
    for (int y = 1; y <= 4; ++y) CHECK(continuum_entry(x, y, 512) > 0);

  // Finite-grid entries approach the limit as n doubles.
  const double d64 = std::fabs(spectral_entry(64, 64, 1, 1) - a11);
  const double d128 = std::fabs(spectral_entry(128, 128, 1, 1) - a11);
  const double d256 = std::fabs(spectral_entry(256, 256, 1, 1) - a11);
  CHECK(d128 < d64);
  CHECK(d256 < d128);
}

TEST_CASE("expected TI length matches exact sums and grows like a log") {
  CHECK(std::fabs(expected_ti_length(2) - 0.5) < 1e-12);

  for (int n : {3, 4, 6}) {
    auto spec = GridSpec::rectangle(n, n, 1, {{{1, 1}, Dir::W}});
    auto k = dirichlet_matrix(build_g1(spec));
    const auto col = k.inverse_column(primal_id(spec, {1, 1}));
    double exact = 0;
    for (const auto& v : col) exact += static_cast<double>(v);
    CHECK(std::fabs(expected_ti_length(n) - exact) < 1e-10);
  }

  double prev = expected_ti_length(2);
  for (int n : {4, 8, 16, 32, 64}) {
    const double cur = expected_ti_length(n);
    CHECK(cur > prev);
    prev = cur;
  }

  const double slope =
      (expected_ti_length(512) - expected_ti_length(256)) / std::log(2.0);
  CHECK(std::fabs(slope - 2 / std::numbers::pi) <
        0.1 * (2 / std::numbers::pi));
}

TEST_CASE("chain weights decay at the predicted geometric rate") {
  auto a = chain_asymptotics(40);
  const double rate = 1.0 / (2 + std::sqrt(3.0));
  for (int j = 5; j <= 15; ++j)
    CHECK(std::fabs(a.ratio[j - 1] - rate) < 0.01 * rate);
  CHECK(std::fabs(a.fitted_rate - rate) < 0.01 * rate);
  Rational total(0);
  for (const auto& p : a.probability) total += p;
  CHECK(total < Rational(1));  // the rest sits in the terminal atom
}

TEST_CASE("tail mass concentrates near the terminal") {
  auto rect = concentration_profile({8, 16, 32}, 0.25);
  REQUIRE(rect.size() == 3);
  CHECK(rect[0].tail_mass > rect[1].tail_mass);
  CHECK(rect[1].tail_mass > rect[2].tail_mass);

  auto whole = concentration_profile({6}, 1.0);
  CHECK(whole[0].tail_mass == 0.0);

  auto chain = concentration_profile({8, 16, 32}, 0.25, GridSpec::Shape::Chain);
  CHECK(chain[1].tail_mass < 0.5 * chain[0].tail_mass);
  CHECK(chain[2].tail_mass < 0.5 * chain[1].tail_mass);
  CHECK(chain[2].tail_mass > 0);
}
