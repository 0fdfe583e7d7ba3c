#include "nullitylab/curvature.hpp"

#include <algorithm>

namespace nullitylab {

CurvatureTensor::CurvatureTensor(std::vector<MatrixXd> ops, MatrixXd metric, double reference_scale)
    : ops_(std::move(ops)), metric_(std::move(metric)) {
  const int n = dim();
  if (ops_.size() != static_cast<size_t>(n * n))
    throw Error(ErrorCode::DimensionMismatch, "curvature table must hold n*n operators");
  ricci_ = MatrixXd::Zero(n, n);
  for (const auto& m : ops_) scale_ = std::max(scale_, m.norm());
  reference_scale_ = std::max(reference_scale, scale_);
  // Ric(e_a, e_b) = trace(v -> R_{v, e_a} e_b) = sum_k (R_{e_k, e_a} e_b)_k
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double t = 0.0;
      for (int k = 0; k < n; ++k) t += op(k, a)(k, b);
      ricci_(a, b) = t;
    }
}

MatrixXd CurvatureTensor::op(const VectorXd& x, const VectorXd& y) const {
  const int n = dim();
  if (x.size() != n || y.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector has wrong length");
  MatrixXd m = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n; ++j)
      if (y(j) != 0.0) m += (x(i) * y(j)) * op(i, j);
  }
  return m;
}

double CurvatureTensor::value(const VectorXd& x, const VectorXd& y, const VectorXd& z,
                              const VectorXd& w) const {
  return (op(x, y) * z).dot(metric_ * w);
}

CurvatureTensor curvature_table(const MetricLieAlgebra& alg, const ConnectionTable& table) {
  const int n = alg.dim();
  if (table.dim() != n) throw Error(ErrorCode::DimensionMismatch, "connection table does not match algebra");
  std::vector<MatrixXd> ops(static_cast<size_t>(n * n), MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const MatrixXd r = table.op(alg.bracket(i, j)) + table.op(i) * table.op(j) - table.op(j) * table.op(i);
      ops[static_cast<size_t>(i * n + j)] = r;
      ops[static_cast<size_t>(j * n + i)] = -r;
    }
  const double s = table.scale();
  return CurvatureTensor(std::move(ops), table.metric(), std::max(s * s, s * alg.bracket_scale()));
}

RicciData ricci(const CurvatureTensor& ct) {
  RicciData out;
  out.matrix = 0.5 * (ct.ricci_form() + ct.ricci_form().transpose());
  const MatrixXd f = orthonormal_frame(ct.metric());
  const MatrixXd on = f.transpose() * out.matrix * f;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (on + on.transpose()), Eigen::EigenvaluesOnly);
  out.eigenvalues = es.eigenvalues();  // ascending
  out.scalar = on.trace();
  return out;
}

double sectional(const CurvatureTensor& ct, const VectorXd& x, const VectorXd& y, double tol) {
  const MatrixXd& g = ct.metric();
  if (x.size() != ct.dim() || y.size() != ct.dim()) throw Error(ErrorCode::DimensionMismatch, "vector has wrong length");
  const double xx = x.dot(g * x);
  const double yy = y.dot(g * y);
  const double xy = x.dot(g * y);
  const double gram = xx * yy - xy * xy;
  if (!(gram > tol * xx * yy)) throw Error(ErrorCode::DegeneratePlane, "vectors do not span a plane");
  return ct.value(x, y, y, x) / gram;
}

MatrixXd jacobi_operator(const CurvatureTensor& ct, const VectorXd& v) {
  const int n = ct.dim();
  if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "direction has wrong length");
  MatrixXd j(n, n);
  // R_{e_a, v} v = sum_b v_b R_{e_a, e_b} v
  for (int a = 0; a < n; ++a) {
    VectorXd col = VectorXd::Zero(n);
    for (int b = 0; b < n; ++b)
      if (v(b) != 0.0) col += v(b) * (ct.op(a, b) * v);
    j.col(a) = col;
  }
  return j;
}

}  // namespace nullitylab
