#include "impdimer/exact_matrix.hpp"

#include <stdexcept>

namespace impdimer {

Int to_integer(const Rational& q) {
  if (!is_integer(q)) throw std::domain_error("rational is not an integer");
  return numerator_of(q);
}

std::string to_string(const Rational& q) { return q.str(); }
std::string to_string(const Int& n) { return n.str(); }

ExactMatrix::ExactMatrix(std::vector<int> ids) : ids_(std::move(ids)) {
  for (int i = 0; i < dim(); ++i) index_[ids_[i]] = i;
  if (static_cast<int>(index_.size()) != dim())
    throw std::invalid_argument("duplicate vertex ids in matrix index");
  m_ = RationalMatrix::Zero(dim(), dim());
}

ExactMatrix::ExactMatrix(const ExactMatrix& other)
    : ids_(other.ids_), index_(other.index_), m_(other.m_) {}

ExactMatrix& ExactMatrix::operator=(const ExactMatrix& other) {
  if (this != &other) {
    std::scoped_lock lock(mu_);
    ids_ = other.ids_;
    index_ = other.index_;
    m_ = other.m_;
    det_.reset();
    columns_.clear();
  }
  return *this;
}

int ExactMatrix::index_of(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("unknown vertex id");
  return it->second;
}

Rational& ExactMatrix::at(int row_id, int col_id) {
  std::scoped_lock lock(mu_);
  det_.reset();
  columns_.clear();
  return m_(index_of(row_id), index_of(col_id));
}

const Rational& ExactMatrix::at(int row_id, int col_id) const {
  return m_(index_of(row_id), index_of(col_id));
}

namespace {

// Clears denominators rowwise, returning the integer matrix and the
// product of row scalers.
void clear_denominators(const RationalMatrix& m,
                        std::vector<std::vector<Int>>& a, Int& scale) {
  const int n = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  a.assign(n, std::vector<Int>(cols));
  scale = 1;
  for (int i = 0; i < n; ++i) {
    Int lcm = 1;
    for (int j = 0; j < cols; ++j) {
      const Int den = denominator_of(m(i, j));
      lcm = boost::multiprecision::lcm(lcm, den);
    }
    for (int j = 0; j < cols; ++j)
      a[i][j] = numerator_of(m(i, j)) * (lcm / denominator_of(m(i, j)));
    scale *= lcm;
  }
}

// Fraction-free elimination in place; returns the determinant of the
// leading n x n block (the matrix may carry extra right-hand columns).
Int bareiss(std::vector<std::vector<Int>>& a, int n, int* sign_out) {
  int sign = 1;
  Int prev = 1;
  for (int k = 0; k < n; ++k) {
    int pivot = -1;
    for (int r = k; r < n; ++r)
      if (a[r][k] != 0) {
        pivot = r;
        break;
      }
    if (pivot == -1) {
      if (sign_out) *sign_out = sign;
      return Int(0);
    }
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      sign = -sign;
    }
    const int cols = static_cast<int>(a[k].size());
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < cols; ++c)
        a[r][c] = (a[r][c] * a[k][k] - a[r][k] * a[k][c]) / prev;
      a[r][k] = 0;
    }
    prev = a[k][k];
  }
  if (sign_out) *sign_out = sign;
  return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

}  // namespace

const Rational& ExactMatrix::det() const {
  std::scoped_lock lock(mu_);
  if (!det_) {
    if (dim() == 0) {
      det_ = Rational(1);
    } else {
      std::vector<std::vector<Int>> a;
      Int scale;
      clear_denominators(m_, a, scale);
      const Int d = bareiss(a, dim(), nullptr);
      det_ = Rational(d) / Rational(scale);
    }
  }
  return *det_;
}

const std::vector<Rational>& ExactMatrix::inverse_column(int col_id) const {
  if (det() == 0) throw std::domain_error("singular matrix");
  std::scoped_lock lock(mu_);
  auto it = columns_.find(col_id);
  if (it != columns_.end()) return it->second;
  std::vector<Rational> rhs(dim(), Rational(0));
  rhs[index_of(col_id)] = 1;
  // solve() without re-locking: inline the elimination here.
  const int n = dim();
  RationalMatrix aug(n, n + 1);
  aug.leftCols(n) = m_;
  for (int i = 0; i < n; ++i) aug(i, n) = rhs[i];
  std::vector<std::vector<Int>> a;
  Int scale;
  clear_denominators(aug, a, scale);
  bareiss(a, n, nullptr);
  std::vector<Rational> x(n);
  for (int i = n - 1; i >= 0; --i) {
    Rational s(a[i][n]);
    for (int j = i + 1; j < n; ++j) s -= Rational(a[i][j]) * x[j];
    if (a[i][i] == 0) throw std::domain_error("singular matrix");
    x[i] = s / Rational(a[i][i]);
  }
  return columns_.emplace(col_id, std::move(x)).first->second;
}

Rational ExactMatrix::inverse_entry(int row_id, int col_id) const {
  return inverse_column(col_id)[index_of(row_id)];
}

std::vector<Rational> ExactMatrix::solve(
    const std::vector<Rational>& rhs) const {
  if (static_cast<int>(rhs.size()) != dim())
    throw std::invalid_argument("rhs dimension mismatch");
  if (det() == 0) throw std::domain_error("singular matrix");
  const int n = dim();
  RationalMatrix aug(n, n + 1);
  aug.leftCols(n) = m_;
  for (int i = 0; i < n; ++i) aug(i, n) = rhs[i];
  std::vector<std::vector<Int>> a;
  Int scale;
  clear_denominators(aug, a, scale);
  bareiss(a, n, nullptr);
  std::vector<Rational> x(n);
  for (int i = n - 1; i >= 0; --i) {
    Rational s(a[i][n]);
    for (int j = i + 1; j < n; ++j) s -= Rational(a[i][j]) * x[j];
    if (a[i][i] == 0) throw std::domain_error("singular matrix");
    x[i] = s / Rational(a[i][i]);
  }
  return x;
}

ExactMatrix dirichlet_matrix(const PlaneGraph& g1) {
  ExactMatrix k(g1.vertices_with_role(Role::Primal));
  for (int id : k.ids()) k.at(id, id) = 4;
  for (const auto& e : g1.edges()) {
    if (e.kind != EdgeKind::PrimalEdge) continue;
    if (g1.vertex(e.u).role != Role::Primal ||
        g1.vertex(e.v).role != Role::Primal)
      continue;
    k.at(e.u, e.v) = -1;
    k.at(e.v, e.u) = -1;
  }
  return k;
}

Rational det_exact(const ExactMatrix& m) { return m.det(); }

Rational inverse_entry(const ExactMatrix& m, int row_id, int col_id) {
  return m.inverse_entry(row_id, col_id);
}

std::vector<Rational> solve_exact(const ExactMatrix& m,
                                  const std::vector<Rational>& rhs) {
  return m.solve(rhs);
}

}  // namespace impdimer
