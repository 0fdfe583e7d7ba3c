#pragma once

#include <vector>

#include "nullitylab/nullity.hpp"

namespace nullitylab {

/// Transvections at the base point among the Killing fields of the input
/// algebra. Everything here is relative to g: the full isometry algebra may
/// contain more transvections, so `index_of_symmetry` is a lower bound.
struct TransvectionSet {
  MatrixXd cartan_basis;        ///< columns span p = { X : (nabla X)_e = 0 }
  Subspace symmetric_subspace;  ///< s = p . e
  MatrixXd abelian_part_basis;  ///< p_0 = { X in p : [X, p] = 0 }
  Subspace flat_symmetry;       ///< s^0 = p_0 . e
  MatrixXd null_jacobi_basis;   ///< a_0 = { X in p_0 : R_{., X_e} X_e = 0 }
  int index_of_symmetry = 0;
  int co_index = 0;
  bool relative = true;
};

/// Throws NonlinearNullJacobiSet when two accepted null-Jacobi transvections
/// have a sum whose Jacobi operator exceeds 10 * tol.alg.
TransvectionSet transvection_set(const MetricLieAlgebra& alg, const ConnectionTable& table,
                                 const CurvatureTensor& ct, const Tolerances& tol = {});

struct WitnessCertificate {
  double nomizu_norm = 0.0;  ///< |Gamma_Y|
  double jacobi_norm = 0.0;  ///< |R_{., Y} Y|
  double ad_squared_norm = 0.0;
  double ad_norm = 0.0;
  double threshold = 0.0;

  bool is_transvection() const { return nomizu_norm <= threshold; }
  bool null_jacobi() const { return jacobi_norm <= threshold; }
  bool ad_squared_zero() const { return ad_squared_norm <= threshold; }
  bool ad_nonzero() const { return ad_norm > 10.0 * threshold; }
  bool passed() const { return is_transvection() && null_jacobi() && ad_squared_zero() && ad_nonzero(); }
};

/// A transvection Y with Y_e in the adapted distribution but not in the nullity.
struct AdaptedWitness {
  VectorXd y;               ///< coefficients of Y (equal to Y_e)
  int field = -1;           ///< Y = nabla_w X_field when found as a generator, else -1
  VectorXd direction;       ///< the nullity vector w
  WitnessCertificate certificate;
};

/// Generators nabla_w Z are scanned with w running over the normalised
/// projections of e_1, e_2, ... onto nu and Z over the basis; the first one that
/// is a transvection outside nu is returned, scaled so that its first
/// coefficient of largest magnitude is 1. Throws NoWitness when neither the
/// generators nor the intersection of s with the adapted distribution supply one.
AdaptedWitness adapted_transvection_witness(const MetricLieAlgebra& alg, const ConnectionTable& table,
                                            const CurvatureTensor& ct, const DistributionChain& chain,
                                            const Tolerances& tol = {});

/// Norms used by the witness certificate, for an arbitrary Killing field.
WitnessCertificate certify_transvection(const MetricLieAlgebra& alg, const ConnectionTable& table,
                                        const CurvatureTensor& ct, const VectorXd& y, double threshold);

}  // namespace nullitylab
