#include "impdimer/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "impdimer/counts.hpp"
#include "impdimer/exact_matrix.hpp"
#include "impdimer/lattice.hpp"

namespace impdimer {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(k * pi * x / (n+1)) tables for k, x = 1..n.
std::vector<std::vector<double>> sine_table(int n) {
  std::vector<std::vector<double>> s(n + 1, std::vector<double>(n + 1));
  for (int k = 1; k <= n; ++k)
    for (int x = 1; x <= n; ++x)
      s[k][x] = std::sin(k * kPi * x / (n + 1));
  return s;
}

double eigenvalue(int n, int m, int k, int l) {
  return 4 - 2 * std::cos(k * kPi / (n + 1)) - 2 * std::cos(l * kPi / (m + 1));
}

}  // namespace

double spectral_entry(int n, int m, int x, int y) {
  if (n < 1 || m < 1 || x < 1 || x > n || y < 1 || y > m)
    throw std::out_of_range("spectral entry outside the grid");
  double sum = 0;
  for (int k = 1; k <= n; ++k) {
    const double fk =
        std::sin(k * kPi * x / (n + 1)) * std::sin(k * kPi / (n + 1));
    for (int l = 1; l <= m; ++l)
      sum += fk * std::sin(l * kPi * y / (m + 1)) *
             std::sin(l * kPi / (m + 1)) / eigenvalue(n, m, k, l);
  }
  return 4.0 / ((n + 1) * (m + 1)) * sum;
}

namespace {

double continuum_midpoint(int x, int y, int r) {
  const double h = kPi / r;
  std::vector<double> sx(r), sy(r), s1(r), c(r);
  for (int i = 0; i < r; ++i) {
    const double t = (i + 0.5) * h;
    sx[i] = std::sin(x * t);
    sy[i] = std::sin(y * t);
    s1[i] = std::sin(t);
    c[i] = std::cos(t);
  }
  double sum = 0;
  for (int i = 0; i < r; ++i) {
    double inner = 0;
    for (int j = 0; j < r; ++j)
      inner += sy[j] * s1[j] / (2 - c[i] - c[j]);
    sum += sx[i] * s1[i] * inner;
  }
  return 2.0 / (kPi * kPi) * sum * h * h;
}

}  // namespace

double continuum_entry(int x, int y, int resolution) {
  if (x < 1 || y < 1) throw std::out_of_range("continuum entry needs x,y >= 1");
  if (resolution > 0) return continuum_midpoint(x, y, resolution);
  double prev = continuum_midpoint(x, y, 64);
  for (int r = 128; r <= 4096; r *= 2) {
    const double cur = continuum_midpoint(x, y, r);
    if (std::fabs(cur - prev) < 1e-6) return cur;
    prev = cur;
  }
  return prev;
}

double expected_ti_length(int n) {
  if (n < 2) throw std::out_of_range("expected TI length needs n >= 2");
  double sum = 0;
  for (int k = 1; k <= n; k += 2) {
    const double tk = k * kPi / (n + 1);
    const double fk = std::sin(tk) * std::sin(tk) / (1 - std::cos(tk));
    for (int l = 1; l <= n; l += 2) {
      const double tl = l * kPi / (n + 1);
      sum += fk * std::sin(tl) * std::sin(tl) / (1 - std::cos(tl)) /
             eigenvalue(n, n, k, l);
    }
  }
  return 4.0 / ((n + 1) * (n + 1)) * sum;
}

ChainAsymptotics chain_asymptotics(int n) {
  if (n < 4) throw std::out_of_range("chain asymptotics needs n >= 4");
  auto spec = GridSpec::chain(n, 1, {{{1, 1}, Dir::N}});
  auto dist = impurity_distribution(spec);
  ChainAsymptotics out;
  out.n = n;
  for (const auto& row : dist.rows) out.probability.push_back(row.probability);
  for (int j = 0; j + 1 < n; ++j)
    out.ratio.push_back(
        static_cast<double>(out.probability[j + 1] / out.probability[j]));
  const int lo = std::max(2, n / 8), hi = std::min(n - 2, 3 * n / 8);
  double log_sum = 0;
  int cnt = 0;
  for (int j = lo; j <= hi; ++j, ++cnt) log_sum += std::log(out.ratio[j - 1]);
  out.fitted_rate = cnt ? std::exp(log_sum / cnt) : 0;
  return out;
}

std::vector<ConcentrationRow> concentration_profile(
    const std::vector<int>& ns, double c, GridSpec::Shape shape) {
  if (c <= 0 || c > 1)
    throw std::out_of_range("box fraction must lie in (0, 1]");
  std::vector<ConcentrationRow> out;
  for (int n : ns) {
    ConcentrationRow row;
    row.n = n;
    if (shape == GridSpec::Shape::Chain) {
      auto dist = impurity_distribution(GridSpec::chain(n, 1, {{{1, 1}, Dir::N}}));
      Rational tail(0);
      for (const auto& r : dist.rows)
        if (r.site.x - 1 >= c * n) tail += r.probability;
      row.tail_mass = static_cast<double>(tail);
    } else if (n <= 16) {
      auto dist = impurity_distribution(
          GridSpec::rectangle(n, n, 1, {{{1, 1}, Dir::W}}));
      Rational tail(0);
      for (const auto& r : dist.rows)
        if (std::max(r.site.x - 1, r.site.y - 1) >= c * n)
          tail += r.probability;
      row.tail_mass = static_cast<double>(tail);
    } else {
      // Spectral evaluation: same distribution, floating point.
      const auto s = sine_table(n);
      std::vector<std::vector<double>> inv_e(n + 1,
                                             std::vector<double>(n + 1));
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) inv_e[k][l] = 1.0 / eigenvalue(n, n, k, l);
      const double norm = 4.0 / ((n + 1) * (n + 1));
      double total = 0, tail = 0;
      for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
          double a = 0;
          for (int k = 1; k <= n; ++k) {
            const double fk = s[k][x] * s[k][1];
            for (int l = 1; l <= n; ++l)
              a += fk * s[l][y] * s[l][1] * inv_e[k][l];
          }
          a *= norm;
          total += a;
          if (std::max(x - 1, y - 1) >= c * n) tail += a;
        }
      row.tail_mass = 4 * tail / (4 * total + 2);
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace impdimer
