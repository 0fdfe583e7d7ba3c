#pragma once

#include <Eigen/Dense>

#include <vector>

#include "nullitylab/error.hpp"

namespace nullitylab {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Thresholds shared by every rank, kernel and inclusion decision.
struct Tolerances {
  double alg = 1e-8;  ///< relative singular-value cut-off for rank decisions
  double sub = 1e-8;  ///< subspace inclusion / equality threshold
  double pd = 1e-10;  ///< positive-definiteness margin for the metric

  bool operator==(const Tolerances&) const = default;
};

/// Singular values of `a` together with the rank decided at `tol`.
///
/// The cut-off is `tol * max(sigma_max, floor)`. `floor` is the natural scale
/// of the problem that produced `a`, so that a matrix made only of rounding
/// noise is not mistaken for a full-rank one.
struct RankDecision {
  VectorXd singular_values;
  double threshold = 0.0;
  int rank = 0;
  /// Some singular value lies inside (cut/10, cut*10).
  bool ambiguous = false;
};

RankDecision decide_rank(const MatrixXd& a, double tol, double floor = 0.0);

/// Throws IllConditioned when a singular value sits within a decade of the
/// cut-off. `what` names the decision in the message.
void require_well_conditioned(const RankDecision& d, const char* what);

/// Orthonormal basis (columns) of the column span of `cols`.
MatrixXd orth(const MatrixXd& cols, double tol, double floor = 0.0, bool strict = true);

/// Orthonormal basis of the null space of `a` (as columns of an n x k matrix).
MatrixXd null_space(const MatrixXd& a, double tol, double floor = 0.0, bool strict = true);

/// Flattens a square matrix column-major into a vector.
VectorXd vec(const MatrixXd& m);
MatrixXd unvec(const VectorXd& v, Eigen::Index n);

/// Lower Cholesky factor of a symmetric positive definite matrix; throws
/// SingularMetric otherwise.
MatrixXd cholesky_lower(const MatrixXd& g, double tol_pd);

/// Columns form a g-orthonormal frame: F^T g F = I.
MatrixXd orthonormal_frame(const MatrixXd& g);

/// Tolerance-aware linear subspace of R^n, stored as an orthonormal basis.
class Subspace {
public:
  Subspace() = default;

  static Subspace zero(Eigen::Index ambient, double tol = 1e-8);
  static Subspace full(Eigen::Index ambient, double tol = 1e-8);
  /// Span of the given columns, rank decided at `tol` (relative).
  static Subspace span(const MatrixXd& cols, double tol = 1e-8, double floor = 0.0);
  /// Wraps a basis already known to be orthonormal.
  static Subspace from_orthonormal(MatrixXd basis, double tol = 1e-8);

  Eigen::Index ambient_dim() const { return ambient_; }
  Eigen::Index dim() const { return basis_.cols(); }
  const MatrixXd& basis() const { return basis_; }
  double tol() const { return tol_; }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  VectorXd project(const VectorXd& v) const;
  MatrixXd projector() const;
  bool contains(const VectorXd& v) const;
  bool contains(const Subspace& other) const;
  bool equals(const Subspace& other) const;
  /// Largest principal angle between equal-dimensional subspaces (radians);
  /// pi/2 when the dimensions differ.
  double max_principal_angle(const Subspace& other) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// Euclidean orthogonal complement.
  Subspace complement() const;
  /// Orthogonal complement with respect to the inner product `g`.
  Subspace complement(const MatrixXd& g) const;
  /// Image under a linear map `m` (n x n).
  Subspace image(const MatrixXd& m) const;

private:
  Subspace(Eigen::Index ambient, MatrixXd basis, double tol)
      : ambient_(ambient), basis_(std::move(basis)), tol_(tol) {}

  Eigen::Index ambient_ = 0;
  MatrixXd basis_;
  double tol_ = 1e-8;
};

/// Columns as a list of vectors.
std::vector<VectorXd> columns(const MatrixXd& m);
MatrixXd hstack(const std::vector<VectorXd>& cols, Eigen::Index rows);

}  // namespace nullitylab
