#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nullitylab/holonomy.hpp"
#include "nullitylab/symmetry.hpp"

namespace nullitylab {

// The solvable family G = R^d x| R, where R acts on R^d through exp(tA) and
//
//        [ a M_{d-1}   a e_1 ]
//    A = [ -a e_1^T      a   ],    trace(A A^T) = 1.
//
// Its Lie algebra is spanned by E_1..E_d (translations) and the generator A,
// realised as (d+1) x (d+1) matrices, with trace(X Y^T) as the inner product.

enum class ExampleMode { PaperDefault, CustomA };

struct ExampleSpec {
  int d = 3;
  MatrixXd action;  ///< the d x d matrix A
  double a = 0.0;   ///< scale of the default family; 0 in custom mode
  ExampleMode mode = ExampleMode::PaperDefault;

  int n() const { return d + 1; }

  /// Throws BadDimension for d < 3.
  static ExampleSpec paper_default(int d);
  /// Any square action matrix; nothing is certified for these.
  static ExampleSpec custom(MatrixXd action);
};

/// Skew-symmetric m x m matrix with ones above the diagonal.
MatrixXd skew_ones(int m);

/// a^2 = 1 / (3 + (n-2)(n-3)) with n = d + 1.
double default_scale(int d);

/// Brackets from the matrix commutators, identity metric on E_1..E_d, A.
MetricLieAlgebra build_example(const ExampleSpec& spec);

/// The basis E_1, ..., E_d, A as (d+1) x (d+1) matrices.
std::vector<MatrixXd> matrix_basis(const ExampleSpec& spec);

/// Block matrices for nabla E_d and nabla A at the identity of the default family.
MatrixXd expected_nabla_last(const ExampleSpec& spec);
MatrixXd expected_nabla_action(const ExampleSpec& spec);

/// Ricci spectrum of the default family, ascending.
VectorXd expected_ricci_spectrum(int d);

struct AppendixVerdict {
  int m = 0;                          ///< size of the skew matrix (d - 1)
  std::vector<int> atom_dims;         ///< kernel line and eigenplanes
  std::optional<VectorXd> kernel;     ///< present when m is odd
  int subspaces_enumerated = 0;
  int contained_in_w = 0;
  double min_cluster_gap = 0.0;
  bool none_contained = false;
};

/// Enumerates every invariant subspace of skew_ones(d - 1) (sums of the
/// kernel and the real eigenplanes) and tests containment in e_1^perp.
/// Throws BadDimension for d < 3 and EigenDegeneracy when eigenvalues cluster.
AppendixVerdict appendix_invariance_check(int d, const Tolerances& tol = {});

struct CertificateClause {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

struct Section8Certificate {
  int d = 0;
  int n = 0;
  double a = 0.0;
  std::vector<CertificateClause> clauses;

  VectorXd ricci_eigenvalues;
  double scalar = 0.0;
  int dim_nullity = 0;
  int dim_osc1 = 0;
  int dim_osc2 = 0;
  int dim_bounded = 0;
  int conullity = 0;
  int index_of_symmetry = 0;
  int co_index = 0;
  int holonomy_dim = 0;
  double trace_ad_action = 0.0;
  VectorXd witness;

  bool passed() const;
  /// First failing clause, or nullptr.
  const CertificateClause* first_failure() const;
};

/// Recomputes every claim about the default family. Throws BadMode for
/// custom-mode specs.
Section8Certificate verify_section8(const ExampleSpec& spec, const Tolerances& tol = {},
                                    std::uint64_t seed = kDefaultSeed, int certification_rounds = 20);

/// Throws CertificateFailure naming the first failed clause.
void require_passed(const Section8Certificate& cert);

struct TransportSample {
  double t = 0.0;
  double group_norm = 0.0;     ///< |Z| at exp(tv), from the matrix group
  double formula_norm = 0.0;   ///< |Z_e + t nabla_v Z|
  double relative_error = 0.0;
  double second_derivative = 0.0;  ///< max_Z |D^2/dt^2 Z| along the witness geodesic
};

struct TransportReport {
  std::vector<TransportSample> samples;
  double max_relative_error = 0.0;
  double max_second_derivative = 0.0;
  double step = 1e-4;
  VectorXd witness;  ///< unit direction of the witness geodesic
};

/// Killing field Z along exp(tv) through the group, against the linear-growth
/// formula from base-point data, plus the finite-difference second covariant
/// derivative of every basis field along exp(tY) for the witness Y. Throws
/// NotInNullity when v is not a nullity vector.
TransportReport transport_check(const ExampleSpec& spec, const VectorXd& v, int z,
                                const std::vector<double>& t_samples, const Tolerances& tol = {},
                                double step = 1e-4);

}  // namespace nullitylab
