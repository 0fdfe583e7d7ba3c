#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nullitylab/curvature.hpp"

namespace nullitylab {

/// Lie algebra of endomorphisms generated by the Nomizu operators at the base
/// point (Kostant's holonomy span).
struct HolonomyAlgebra {
  std::vector<MatrixXd> generators;
  std::vector<MatrixXd> closure_basis;  ///< Frobenius-orthonormal
  int depth = 0;                        ///< bracket rounds until the dimension stopped growing

  int dim() const { return static_cast<int>(closure_basis.size()); }
  /// Distance from `m` to the closure span (Frobenius).
  double projection_residual(const MatrixXd& m) const;
};

/// Iterated commutator closure, taken in coordinates on so(n). Throws
/// IllConditioned if the dimension changes when the cut-off moves by a decade.
HolonomyAlgebra kostant_span(const ConnectionTable& table, const Tolerances& tol = {});

struct InvariantSubspaceVerdict {
  bool irreducible = false;
  Subspace invariant;            ///< a proper non-zero invariant subspace when reducible
  bool split_flat = false;       ///< the invariant subspace is annihilated by every operator
  int commutant_dim = 0;         ///< symmetric matrices commuting with every operator
  int seeds_run = 0;
  int seeds_decisive = 0;        ///< random combinations with separated spectrum
  int seeds_agreeing = 0;
};

/// Decides whether the operators (skew with respect to `metric`) have a common
/// invariant subspace.
///
/// The primary decision uses the symmetric commutant: for a family of skew
/// operators it is one-dimensional exactly when the family is irreducible. It
/// is checked against `certification_rounds` random combinations of the
/// operators, whose eigenplanes are closed under the family; a decisive round
/// that disagrees raises Inconclusive.
InvariantSubspaceVerdict invariant_subspaces(const std::vector<MatrixXd>& ops, const MatrixXd& metric,
                                             std::mt19937_64& rng, int certification_rounds = 20,
                                             const Tolerances& tol = {});

/// Convenience overload with the Euclidean metric.
InvariantSubspaceVerdict invariant_subspaces(const std::vector<MatrixXd>& ops, std::mt19937_64& rng,
                                             int certification_rounds = 20, const Tolerances& tol = {});

/// Common kernel of the holonomy span intersected with the nullity: the
/// tangent space of the local Euclidean factor.
Subspace flat_factor_detector(const HolonomyAlgebra& hol, const CurvatureTensor& ct, const Tolerances& tol = {});

/// Default certification seed; NULLITYLAB_SEED overrides it in the CLI.
inline constexpr std::uint64_t kDefaultSeed = 20240611;

}  // namespace nullitylab
