#pragma once

#include <Eigen/Dense>

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "impdimer/plane_graph.hpp"
#include "impdimer/rational.hpp"

namespace impdimer {

using RationalMatrix =
    Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

// Dense rational matrix indexed by vertex ids. Determinant and solved
// columns are cached behind a mutex; a given column is solved at most once.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  explicit ExactMatrix(std::vector<int> ids);
  ExactMatrix(const ExactMatrix& other);
  ExactMatrix& operator=(const ExactMatrix& other);

  int dim() const { return static_cast<int>(ids_.size()); }
  const std::vector<int>& ids() const { return ids_; }
  int index_of(int id) const;  // throws on unknown vertex

  Rational& at(int row_id, int col_id);
  const Rational& at(int row_id, int col_id) const;
  RationalMatrix& raw() { return m_; }
  const RationalMatrix& raw() const { return m_; }

  // Exact determinant via fraction-free (Bareiss) elimination on the
  // denominator-cleared integer matrix.
  const Rational& det() const;
  // Exact column of the inverse (cached per column id).
  const std::vector<Rational>& inverse_column(int col_id) const;
  Rational inverse_entry(int row_id, int col_id) const;
  // Exact solve m x = rhs (rhs indexed like ids()).
  std::vector<Rational> solve(const std::vector<Rational>& rhs) const;

 private:
  std::vector<int> ids_;
  std::map<int, int> index_;
  RationalMatrix m_;
  mutable std::mutex mu_;
  mutable std::optional<Rational> det_;
  mutable std::map<int, std::vector<Rational>> columns_;
};

// K = 4*I - A(G1) over the primal vertices of g1 (degree-4 convention for
// every vertex, boundary included).
ExactMatrix dirichlet_matrix(const PlaneGraph& g1);

Rational det_exact(const ExactMatrix& m);
Rational inverse_entry(const ExactMatrix& m, int row_id, int col_id);
std::vector<Rational> solve_exact(const ExactMatrix& m,
                                  const std::vector<Rational>& rhs);

}  // namespace impdimer
