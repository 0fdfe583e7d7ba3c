#pragma once

#include <string>
#include <vector>

#include "nullitylab/curvature.hpp"

namespace nullitylab {

/// nu = { v : R_{v, x} = 0 for all x }, by thresholded SVD of the stacked map
/// v -> (R_{v, e_j})_j.
Subspace nullity_space(const CurvatureTensor& ct, const Tolerances& tol = {});

struct OsculatingSpaces {
  Subspace adapted;  ///< span { nabla_w Z : w in nu, Z in g }
  Subspace osc1;     ///< nu + adapted
  Subspace osc2;     ///< osc1 + span { nabla_v Z : v in adapted }
};

OsculatingSpaces adapted_and_osculating(const MetricLieAlgebra& alg, const ConnectionTable& table,
                                        const Subspace& nullity, const Tolerances& tol = {});

struct BoundedAlgebra {
  MatrixXd algebra_basis;  ///< columns: Killing fields U with nabla_nu U in nu
  Subspace distribution;   ///< values of those fields at the base point
  double closure_residual = 0.0;
};

/// Throws SubalgebraClosureViolation when the solution space is not closed
/// under the bracket to 10 * tol.alg.
BoundedAlgebra bounded_algebra(const MetricLieAlgebra& alg, const ConnectionTable& table,
                               const Subspace& nullity, const Tolerances& tol = {});

/// H, H + span{nabla_v Z : v in H}, ... until the dimension stops growing or
/// `max_steps` enlargements were made. Only strictly increasing stages are kept.
std::vector<Subspace> osculating_tower(const MetricLieAlgebra& alg, const ConnectionTable& table,
                                       const Subspace& seed, int max_steps, const Tolerances& tol = {});

struct DistributionChain {
  Subspace nullity;
  Subspace adapted;
  Subspace osc1;
  Subspace osc2;
  Subspace bounded;
  MatrixXd bounded_algebra_basis;
  int conullity = 0;
};

/// Runs nullity_space, adapted_and_osculating and bounded_algebra on one algebra.
DistributionChain distribution_chain(const MetricLieAlgebra& alg, const ConnectionTable& table,
                                     const CurvatureTensor& ct, const Tolerances& tol = {});

struct ChainVerdict {
  int n = 0;
  int dim_nullity = 0;
  int dim_adapted = 0;
  int dim_osc1 = 0;
  int dim_osc2 = 0;
  int dim_bounded = 0;
  int conullity = 0;

  // nu ⊆ osc1 ⊆ osc2 ⊆ U ⊆ TM
  bool nullity_in_osc1 = false;
  bool osc1_in_osc2 = false;
  bool osc2_in_bounded = false;
  bool nullity_nonzero = false;        // {0} != nu
  bool nullity_strict_in_osc1 = false;
  bool osc1_strict_in_osc2 = false;
  bool bounded_strict_in_tm = false;
  bool osc2_equals_bounded = false;

  bool trivial_nullity = false;  ///< nu = {0}, nu = TM, or nu is the flat factor
  bool flat = false;             ///< nu = TM
  bool chain_holds = false;      ///< every inclusion holds, strict where required

  bool conullity_three = false;
  bool codim_osc1_is_two = false;
  bool codim_bounded_is_one = false;

  std::string status;  ///< "trivial nullity", "trivial nullity / flat", "non-trivial nullity"

  bool operator==(const ChainVerdict&) const = default;
};

/// `flat_factor_detected` is true when the nullity coincides with the local
/// Euclidean factor found by the holonomy module; the nullity is then trivial.
ChainVerdict chain_report(const DistributionChain& chain, bool flat_factor_detected);

}  // namespace nullitylab
