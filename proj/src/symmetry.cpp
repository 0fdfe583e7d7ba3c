#include "nullitylab/symmetry.hpp"

#include <algorithm>
#include <cmath>

namespace nullitylab {

namespace {

// Null-Jacobi elements of span(q): the radical of the polarised Jacobi map
// first, then the remaining directions one at a time.
MatrixXd null_jacobi_filter(const CurvatureTensor& ct, const MatrixXd& q, const Tolerances& tol) {
  const int n = ct.dim();
  const Eigen::Index m = q.cols();
  if (m == 0) return MatrixXd(n, 0);
  const double ref = ct.reference_scale();

  // J_ab : x -> R_{x, q_a} q_b, symmetrised in (a, b).
  std::vector<MatrixXd> jab(static_cast<size_t>(m * m), MatrixXd::Zero(n, n));
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) {
      MatrixXd j(n, n);
      for (int c = 0; c < n; ++c) {
        VectorXd ec = VectorXd::Unit(n, c);
        j.col(c) = ct.op(ec, VectorXd(q.col(a))) * q.col(b);
      }
      jab[static_cast<size_t>(a * m + b)] = j;
    }
  MatrixXd stacked(static_cast<Eigen::Index>(n) * n * m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      stacked.block(a * n * n, b, n * n, 1) =
          0.5 * vec(jab[static_cast<size_t>(a * m + b)] + jab[static_cast<size_t>(b * m + a)]);

  const MatrixXd radical = null_space(stacked, tol.alg, ref);
  std::vector<VectorXd> accepted = columns(radical);

  auto jacobi_norm = [&](const VectorXd& coeffs) { return jacobi_operator(ct, q * coeffs).norm(); };
  const Subspace rad = radical.cols() ? Subspace::from_orthonormal(radical) : Subspace::zero(m);
  const MatrixXd rest = rad.complement().basis();
  for (Eigen::Index k = 0; k < rest.cols(); ++k) {
    const VectorXd c = rest.col(k);
    if (jacobi_norm(c) <= tol.alg * ref) accepted.push_back(c);
  }

  // The null-Jacobi set is expected to be linear; check every pairwise sum.
  for (size_t a = 0; a < accepted.size(); ++a)
    for (size_t b = a + 1; b < accepted.size(); ++b) {
      const double r = jacobi_norm(accepted[a] + accepted[b]);
      if (r > 10.0 * tol.alg * std::max(ref, 1.0))
        throw Error(ErrorCode::NonlinearNullJacobiSet,
                    "sum of two null-Jacobi transvections has Jacobi norm " + std::to_string(r));
    }
  if (accepted.empty()) return MatrixXd(n, 0);
  return orth(q * hstack(accepted, m), tol.alg, 1.0);
}

}  // namespace

TransvectionSet transvection_set(const MetricLieAlgebra& alg, const ConnectionTable& table,
                                 const CurvatureTensor& ct, const Tolerances& tol) {
  const int n = alg.dim();
  TransvectionSet s;

  MatrixXd nomizu(static_cast<Eigen::Index>(n) * n, n);
  for (int i = 0; i < n; ++i) nomizu.col(i) = vec(table.op(i));
  s.cartan_basis = null_space(nomizu, tol.alg, table.scale());
  const Eigen::Index p = s.cartan_basis.cols();
  s.symmetric_subspace = p ? Subspace::span(s.cartan_basis, tol.sub, 1.0) : Subspace::zero(n, tol.sub);

  // [sum_a y_a P_a, P_b] = 0 for all b
  if (p > 0) {
    MatrixXd system(static_cast<Eigen::Index>(n) * p, p);
    for (Eigen::Index a = 0; a < p; ++a) {
      const MatrixXd ad = alg.ad(VectorXd(s.cartan_basis.col(a)));
      for (Eigen::Index b = 0; b < p; ++b) system.block(b * n, a, n, 1) = ad * s.cartan_basis.col(b);
    }
    const MatrixXd k = null_space(system, tol.alg, std::max(alg.bracket_scale(), 1e-300));
    s.abelian_part_basis = s.cartan_basis * k;
  } else {
    s.abelian_part_basis = MatrixXd(n, 0);
  }
  s.flat_symmetry = s.abelian_part_basis.cols() ? Subspace::span(s.abelian_part_basis, tol.sub, 1.0)
                                                : Subspace::zero(n, tol.sub);
  s.null_jacobi_basis = null_jacobi_filter(ct, s.abelian_part_basis, tol);

  s.index_of_symmetry = static_cast<int>(s.symmetric_subspace.dim());
  s.co_index = n - s.index_of_symmetry;
  return s;
}

WitnessCertificate certify_transvection(const MetricLieAlgebra& alg, const ConnectionTable& table,
                                        const CurvatureTensor& ct, const VectorXd& y, double threshold) {
  WitnessCertificate c;
  c.threshold = threshold;
  c.nomizu_norm = table.op(y).norm();
  c.jacobi_norm = jacobi_operator(ct, y).norm();
  const MatrixXd ad = alg.ad(y);
  c.ad_norm = ad.norm();
  c.ad_squared_norm = (ad * ad).norm();
  return c;
}

AdaptedWitness adapted_transvection_witness(const MetricLieAlgebra& alg, const ConnectionTable& table,
                                            const CurvatureTensor& ct, const DistributionChain& chain,
                                            const Tolerances& tol) {
  const int n = alg.dim();
  const Subspace& nu = chain.nullity;
  if (nu.is_zero() || nu.is_full())
    throw Error(ErrorCode::PreconditionFailed, "witness search needs a non-trivial nullity");

  const double scale = std::max(table.scale(), 1e-300);
  AdaptedWitness w;
  bool found = false;
  for (int e = 0; e < n && !found; ++e) {
    VectorXd dir = nu.project(VectorXd::Unit(n, e));
    if (dir.norm() <= tol.sub) continue;
    dir.normalize();
    for (int z = 0; z < n && !found; ++z) {
      const VectorXd cand = table.op(z) * dir;
      if (cand.norm() <= tol.alg * scale) continue;
      if (nu.contains(cand)) continue;
      if (table.op(cand).norm() > tol.alg * scale * cand.norm()) continue;
      w.y = cand;
      w.field = z;
      w.direction = dir;
      found = true;
    }
  }

  if (!found) {
    const Subspace s = transvection_set(alg, table, ct, tol).symmetric_subspace;
    const Subspace inter = s.intersect(chain.adapted);
    double best = tol.sub;
    for (Eigen::Index k = 0; k < inter.dim(); ++k) {
      const VectorXd v = inter.basis().col(k);
      const double off = (v - nu.project(v)).norm();
      if (off > best) {
        best = off;
        w.y = v;
        found = true;
      }
    }
    if (found) w.direction = VectorXd::Zero(n);
  }
  if (!found)
    throw Error(ErrorCode::NoWitness, "no transvection in the adapted distribution outside the nullity");

  // Canonical scale: the first coefficient of largest magnitude becomes 1.
  const double top = w.y.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < w.y.size(); ++k)
    if (std::abs(w.y(k)) >= top * (1.0 - 1e-12)) {
      w.y /= w.y(k);
      break;
    }

  w.certificate = certify_transvection(alg, table, ct, w.y, tol.alg);
  return w;
}

}  // namespace nullitylab
