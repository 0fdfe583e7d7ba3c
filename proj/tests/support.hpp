#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nullitylab/curvature.hpp"
#include "nullitylab/family.hpp"

namespace nullitylab::testing {

MetricLieAlgebra abelian(int n);
/// [X1, X2] = X3, orthonormal.
MetricLieAlgebra heisenberg3();
/// [X1, X2] = X3 and cyclic, with the identity (bi-invariant) metric.
MetricLieAlgebra so3();
/// R + so(3) with the block metric; the R direction is the first basis vector.
MetricLieAlgebra r_plus_so3();
/// Milnor frame: [e2, e3] = l1 e1, [e3, e1] = l2 e2, [e1, e2] = l3 e3.
MetricLieAlgebra milnor(double l1, double l2, double l3);
/// The 4-dimensional custom-action sample used by the property suite.
MetricLieAlgebra custom_sample();

struct CorpusEntry {
  std::string name;
  MetricLieAlgebra alg;
};
/// Example family d = 3..12, abelian, Heisenberg, so(3), the custom sample.
std::vector<CorpusEntry> corpus();

/// R_{e_i, e_j} (index i * n + j) from the left-invariant frame:
///   <nabla_x y, z> = 1/2 (<[x,y],z> - <[y,z],x> + <[z,x],y>),
///   R(x,y) = nabla_x nabla_y - nabla_y nabla_x - nabla_[x,y].
std::vector<MatrixXd> left_invariant_curvature(const MetricLieAlgebra& alg);

/// Largest entrywise gap between curvature_table and the left-invariant oracle.
double curvature_oracle_gap(const MetricLieAlgebra& alg);

/// Worst residual of each structural invariant on one algebra.
struct PropertyResiduals {
  double koszul = 0.0;
  double torsion = 0.0;
  double nomizu_skew = 0.0;
  double curvature_antisymmetry = 0.0;
  double curvature_skew = 0.0;
  double pair_symmetry = 0.0;
  double bianchi = 0.0;
  double ambrose_singer = 0.0;
  double bounded_closure = 0.0;
  double osc2_in_bounded = 0.0;
  double osc1_planes = 0.0;

  double worst() const;
};
PropertyResiduals property_residuals(const MetricLieAlgebra& alg, std::uint64_t seed = 7);

/// Random P with P^T g P = g.
MatrixXd random_isometry(const MatrixXd& g, std::mt19937_64& rng);

MatrixXd random_matrix(int rows, int cols, std::mt19937_64& rng);

}  // namespace nullitylab::testing
