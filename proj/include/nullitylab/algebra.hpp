#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nullitylab/linalg.hpp"

namespace nullitylab {

/// A Lie algebra of Killing fields acting simply transitively, with the inner
/// product at the base point.
///
/// The bracket table holds, for every ordered pair (i, j), the coefficients of
/// [X_i, X_j] in the basis. The table is stored exactly as given so that a
/// malformed input can be reported by validate() instead of being silently
/// repaired.
class MetricLieAlgebra {
public:
  MetricLieAlgebra() = default;

  /// `table[i * n + j]` is the coefficient vector of [X_i, X_j].
  MetricLieAlgebra(std::vector<std::string> labels, std::vector<VectorXd> table, MatrixXd metric);

  /// Builds the full table from the brackets with i < j; the rest follows by
  /// antisymmetry. Missing pairs commute.
  struct UpperBracket {
    int i = 0;
    int j = 0;
    VectorXd coeffs;
  };
  static MetricLieAlgebra from_upper(std::vector<std::string> labels,
                                     const std::vector<UpperBracket>& brackets,
                                     std::optional<MatrixXd> metric = std::nullopt);

  int dim() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const MatrixXd& metric() const { return metric_; }

  /// Coefficients of [X_i, X_j].
  const VectorXd& bracket(int i, int j) const { return table_[static_cast<size_t>(i * n_ + j)]; }
  /// Bilinear extension of the table.
  VectorXd bracket(const VectorXd& x, const VectorXd& y) const;
  /// Matrix of y -> [x, y].
  MatrixXd ad(const VectorXd& x) const;
  /// Matrix of y -> [X_i, y].
  const MatrixXd& ad(int i) const { return ad_[static_cast<size_t>(i)]; }

  /// Largest absolute structure constant.
  double bracket_scale() const { return scale_; }

  /// Same algebra written in the basis whose vectors are the columns of `p`
  /// (new X'_a = sum_i p(i, a) X_i). Labels are kept.
  MetricLieAlgebra change_basis(const MatrixXd& p) const;

private:
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<VectorXd> table_;
  std::vector<MatrixXd> ad_;
  MatrixXd metric_;
  double scale_ = 0.0;
};

struct ValidationReport {
  struct Violation {
    std::string invariant;  ///< "shape", "antisymmetry", "jacobi", "metric_symmetry", "metric_positive_definite"
    double residual = 0.0;
    bool operator==(const Violation&) const = default;
  };
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
  bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate(const MetricLieAlgebra& alg, const Tolerances& tol = {});

struct StructureReport {
  bool solvable = false;
  std::optional<int> nilpotent_step;
  bool reductive = false;
  std::vector<double> unimodular_defects;  ///< trace(ad X_i) per basis element
  int center_dim = 0;
  int radical_dim = 0;
  std::vector<int> derived_series_dims;
  std::vector<int> lower_central_dims;
  MatrixXd killing_form;

  bool unimodular(double tol) const;
};

/// Derived and lower central series, Killing form, radical (Cartan's criterion)
/// and centre. Rank decisions that are tolerance-sensitive raise IllConditioned.
StructureReport structure_predicates(const MetricLieAlgebra& alg, const Tolerances& tol = {});

/// Kernel of x -> ad x, as an orthonormal basis.
Subspace center(const MetricLieAlgebra& alg, const Tolerances& tol = {});

}  // namespace nullitylab
