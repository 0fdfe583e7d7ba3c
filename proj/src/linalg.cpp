#include "nullitylab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nullitylab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::SubalgebraClosureViolation: return "SubalgebraClosureViolation";
    case ErrorCode::NonlinearNullJacobiSet: return "NonlinearNullJacobiSet";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::ClosureOverflow: return "ClosureOverflow";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::BadMode: return "BadMode";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
    case ErrorCode::EigenDegeneracy: return "EigenDegeneracy";
    case ErrorCode::NotInNullity: return "NotInNullity";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::IllConditioned:
    case ErrorCode::Inconclusive:
    case ErrorCode::ClosureOverflow:
    case ErrorCode::SubalgebraClosureViolation:
    case ErrorCode::NonlinearNullJacobiSet:
    case ErrorCode::EigenDegeneracy:
      return true;
    default:
      return false;
  }
}

namespace {

// Reduces a tall matrix to its triangular factor; singular values and the
// right singular vectors are unchanged.
MatrixXd compress_rows(const MatrixXd& a) {
  if (a.rows() <= 2 * a.cols()) return a;
  Eigen::HouseholderQR<MatrixXd> qr(a);
  return qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
}

}  // namespace

RankDecision decide_rank(const MatrixXd& a, double tol, double floor) {
  RankDecision d;
  if (a.size() == 0) return d;
  Eigen::JacobiSVD<MatrixXd> svd(compress_rows(a));
  d.singular_values = svd.singularValues();
  const double smax = d.singular_values.size() ? d.singular_values(0) : 0.0;
  d.threshold = tol * std::max(smax, floor);
  for (Eigen::Index i = 0; i < d.singular_values.size(); ++i) {
    const double s = d.singular_values(i);
    if (s > d.threshold && d.threshold > 0.0) ++d.rank;
    if (d.threshold > 0.0 && s > d.threshold / 10.0 && s < d.threshold * 10.0) d.ambiguous = true;
  }
  if (d.threshold == 0.0) d.rank = 0;
  return d;
}

void require_well_conditioned(const RankDecision& d, const char* what) {
  if (!d.ambiguous) return;
  std::ostringstream os;
  os << what << ": singular value within a decade of the cut-off " << d.threshold
     << " (spectrum:";
  for (Eigen::Index i = 0; i < d.singular_values.size(); ++i) os << ' ' << d.singular_values(i);
  os << ')';
  throw Error(ErrorCode::IllConditioned, os.str());
}

MatrixXd orth(const MatrixXd& cols, double tol, double floor, bool strict) {
  const Eigen::Index n = cols.rows();
  if (cols.cols() == 0 || n == 0) return MatrixXd(n, 0);
  Eigen::JacobiSVD<MatrixXd> svd(cols, Eigen::ComputeThinU);
  const VectorXd& s = svd.singularValues();
  const double cut = tol * std::max(s.size() ? s(0) : 0.0, floor);
  int rank = 0;
  bool ambiguous = false;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (cut > 0.0 && s(i) > cut) ++rank;
    if (cut > 0.0 && s(i) > cut / 10.0 && s(i) < cut * 10.0) ambiguous = true;
  }
  if (strict && ambiguous) {
    RankDecision d{s, cut, rank, true};
    require_well_conditioned(d, "column span");
  }
  return svd.matrixU().leftCols(rank);
}

MatrixXd null_space(const MatrixXd& a, double tol, double floor, bool strict) {
  const Eigen::Index n = a.cols();
  if (n == 0) return MatrixXd(0, 0);
  if (a.rows() == 0) return MatrixXd::Identity(n, n);
  MatrixXd r = compress_rows(a);
  if (r.rows() < n) {
    MatrixXd padded = MatrixXd::Zero(n, n);
    padded.topRows(r.rows()) = r;
    r = padded;
  }
  Eigen::JacobiSVD<MatrixXd> svd(r, Eigen::ComputeFullV);
  const VectorXd& s = svd.singularValues();
  const double cut = tol * std::max(s.size() ? s(0) : 0.0, floor);
  int rank = 0;
  bool ambiguous = false;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (cut > 0.0 && s(i) > cut) ++rank;
    if (cut > 0.0 && s(i) > cut / 10.0 && s(i) < cut * 10.0) ambiguous = true;
  }
  if (strict && ambiguous) {
    RankDecision d{s, cut, rank, true};
    require_well_conditioned(d, "kernel");
  }
  return svd.matrixV().rightCols(n - rank);
}

VectorXd vec(const MatrixXd& m) { return Eigen::Map<const VectorXd>(m.data(), m.size()); }

MatrixXd unvec(const VectorXd& v, Eigen::Index n) {
  return Eigen::Map<const MatrixXd>(v.data(), n, n);
}

MatrixXd cholesky_lower(const MatrixXd& g, double tol_pd) {
  if (g.rows() != g.cols()) throw Error(ErrorCode::DimensionMismatch, "metric is not square");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (g + g.transpose()), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().size() ? es.eigenvalues().minCoeff() : 1.0;
  const double lmax = es.eigenvalues().size() ? es.eigenvalues().maxCoeff() : 1.0;
  if (!(lmin > tol_pd * std::max(1.0, lmax))) {
    std::ostringstream os;
    os << "metric is not positive definite (smallest eigenvalue " << lmin << ")";
    throw Error(ErrorCode::SingularMetric, os.str());
  }
  Eigen::LLT<MatrixXd> llt(0.5 * (g + g.transpose()));
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::SingularMetric, "Cholesky factorisation failed");
  return llt.matrixL();
}

MatrixXd orthonormal_frame(const MatrixXd& g) {
  const MatrixXd l = cholesky_lower(g, 0.0);
  // g = L L^T, so F = L^{-T} satisfies F^T g F = I.
  return l.transpose().triangularView<Eigen::Upper>().solve(
      MatrixXd::Identity(g.rows(), g.cols()));
}

// ---------------------------------------------------------------------------

Subspace Subspace::zero(Eigen::Index ambient, double tol) {
  return Subspace(ambient, MatrixXd(ambient, 0), tol);
}

Subspace Subspace::full(Eigen::Index ambient, double tol) {
  return Subspace(ambient, MatrixXd::Identity(ambient, ambient), tol);
}

Subspace Subspace::span(const MatrixXd& cols, double tol, double floor) {
  return Subspace(cols.rows(), orth(cols, tol, floor), tol);
}

Subspace Subspace::from_orthonormal(MatrixXd basis, double tol) {
  const Eigen::Index n = basis.rows();
  return Subspace(n, std::move(basis), tol);
}

VectorXd Subspace::project(const VectorXd& v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from ambient dimension");
  if (basis_.cols() == 0) return VectorXd::Zero(ambient_);
  return basis_ * (basis_.transpose() * v);
}

MatrixXd Subspace::projector() const { return basis_ * basis_.transpose(); }

bool Subspace::contains(const VectorXd& v) const {
  return (v - project(v)).norm() <= tol_ * v.norm();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorCode::DimensionMismatch, "subspaces live in different spaces");
  for (Eigen::Index j = 0; j < other.basis_.cols(); ++j)
    if (!contains(VectorXd(other.basis_.col(j)))) return false;
  return true;
}

bool Subspace::equals(const Subspace& other) const {
  return dim() == other.dim() && max_principal_angle(other) <= std::max(tol_, other.tol_);
}

double Subspace::max_principal_angle(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorCode::DimensionMismatch, "subspaces live in different spaces");
  if (dim() != other.dim()) return std::numbers::pi / 2;
  if (dim() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXd> svd(basis_.transpose() * other.basis_);
  const double cmin = std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
  // sin of the largest angle is the residual of projecting one basis on the other;
  // it is better conditioned than acos for tiny angles.
  const MatrixXd resid = other.basis_ - basis_ * (basis_.transpose() * other.basis_);
  Eigen::JacobiSVD<MatrixXd> rs(resid);
  const double smax = std::min(1.0, rs.singularValues().size() ? rs.singularValues()(0) : 0.0);
  return cmin > std::sqrt(0.5) ? std::asin(smax) : std::acos(cmin);
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorCode::DimensionMismatch, "subspaces live in different spaces");
  MatrixXd cols(ambient_, dim() + other.dim());
  cols << basis_, other.basis_;
  return Subspace(ambient_, orth(cols, std::max(tol_, other.tol_)), std::max(tol_, other.tol_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorCode::DimensionMismatch, "subspaces live in different spaces");
  const double t = std::max(tol_, other.tol_);
  if (dim() == 0 || other.dim() == 0) return zero(ambient_, t);
  // x in both  <=>  A a = B b.
  MatrixXd stacked(ambient_, dim() + other.dim());
  stacked << basis_, -other.basis_;
  const MatrixXd k = null_space(stacked, t, 1.0);
  return Subspace(ambient_, orth(basis_ * k.topRows(dim()), t, 1.0), t);
}

Subspace Subspace::complement() const {
  if (dim() == 0) return full(ambient_, tol_);
  return Subspace(ambient_, null_space(basis_.transpose(), tol_, 1.0), tol_);
}

Subspace Subspace::complement(const MatrixXd& g) const {
  if (dim() == 0) return full(ambient_, tol_);
  const MatrixXd k = null_space(basis_.transpose() * g, tol_, 1.0);
  return Subspace(ambient_, orth(k, tol_, 1.0), tol_);
}

Subspace Subspace::image(const MatrixXd& m) const {
  if (dim() == 0) return zero(ambient_, tol_);
  return Subspace(ambient_, orth(m * basis_, tol_), tol_);
}

std::vector<VectorXd> columns(const MatrixXd& m) {
  std::vector<VectorXd> out;
  out.reserve(static_cast<size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) out.emplace_back(m.col(j));
  return out;
}

MatrixXd hstack(const std::vector<VectorXd>& cols, Eigen::Index rows) {
  MatrixXd m(rows, static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j];
  return m;
}

}  // namespace nullitylab
