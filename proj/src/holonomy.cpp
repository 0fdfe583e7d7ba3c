#include "nullitylab/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nullitylab/nullity.hpp"

namespace nullitylab {

namespace {

// Isometric coordinates on so(n): sqrt(2) times the strict upper triangle.
VectorXd skew_coords(const MatrixXd& s) {
  const Eigen::Index n = s.rows();
  VectorXd v(n * (n - 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) v(k++) = std::sqrt(2.0) * 0.5 * (s(i, j) - s(j, i));
  return v;
}

MatrixXd skew_matrix(const VectorXd& v, Eigen::Index n) {
  MatrixXd s = MatrixXd::Zero(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      s(i, j) = v(k++) / std::sqrt(2.0);
      s(j, i) = -s(i, j);
    }
  return s;
}

}  // namespace

double HolonomyAlgebra::projection_residual(const MatrixXd& m) const {
  VectorXd v = vec(m);
  for (const auto& b : closure_basis) v -= vec(b).dot(v) * vec(b);
  return v.norm();
}

HolonomyAlgebra kostant_span(const ConnectionTable& table, const Tolerances& tol) {
  const int n = table.dim();
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  const int max_dim = n * (n - 1) / 2;
  HolonomyAlgebra hol;
  hol.generators = table.ops();
  if (n == 0) return hol;

  // Orthonormal coordinates, where every operator is skew: S = L^T O L^{-T}.
  const MatrixXd frame = orthonormal_frame(table.metric());
  const MatrixXd lt = cholesky_lower(table.metric(), 0.0).transpose();
  MatrixXd gens(max_dim, n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    gens.col(i) = skew_coords(lt * table.op(i) * frame);
    scale = std::max(scale, gens.col(i).norm());
  }
  const MatrixXd start = orth(gens, tol.alg, scale);

  // Bracket rounds at cut-off `t`. Intermediate directions can be tiny but
  // genuine, so single rounds are not judged; the closed span is.
  auto close = [&](double t, int* depth) {
    MatrixXd basis = start;
    Eigen::Index fresh_begin = 0;
    while (true) {
      const Eigen::Index r = basis.cols();
      if (fresh_begin == r || r == max_dim) break;
      // Brackets involving at least one element added in the last round.
      std::vector<VectorXd> cands;
      for (Eigen::Index a = fresh_begin; a < r; ++a) {
        const MatrixXd ma = skew_matrix(basis.col(a), n);
        for (Eigen::Index b = 0; b < r; ++b) {
          if (b >= fresh_begin && b <= a) continue;
          const MatrixXd mb = skew_matrix(basis.col(b), n);
          cands.push_back(skew_coords(ma * mb - mb * ma));
        }
      }
      if (cands.empty()) break;
      MatrixXd c = hstack(cands, max_dim);
      c -= basis * (basis.transpose() * c);
      c -= basis * (basis.transpose() * c);
      // Entries of c are products of two unit-norm matrices.
      const MatrixXd added = orth(c, t, 1.0, false);
      if (depth) ++*depth;
      if (added.cols() == 0) break;
      MatrixXd grown(max_dim, r + added.cols());
      grown << basis, added;
      basis = orth(grown, t, 1.0, false);
      fresh_begin = r;
      if (basis.cols() == r) break;
    }
    return basis;
  };

  const MatrixXd basis = close(tol.alg, &hol.depth);
  const Eigen::Index lo = close(tol.alg * 10.0, nullptr).cols();
  const Eigen::Index hi = close(tol.alg / 10.0, nullptr).cols();
  if (lo != basis.cols() || hi != basis.cols()) {
    std::ostringstream os;
    os << "holonomy span: dimension " << basis.cols() << " at cut-off " << tol.alg << " but " << lo
       << " at ten times and " << hi << " at a tenth";
    throw Error(ErrorCode::IllConditioned, os.str());
  }
  // Back to input coordinates; the rank is already decided.
  const Eigen::Index r = basis.cols();
  if (r == 0) return hol;
  MatrixXd back(nn, r);
  for (Eigen::Index k = 0; k < r; ++k) back.col(k) = vec(frame * skew_matrix(basis.col(k), n) * lt);
  const Eigen::HouseholderQR<MatrixXd> qr(back);
  const MatrixXd q = qr.householderQ() * MatrixXd::Identity(nn, r);
  for (Eigen::Index k = 0; k < r; ++k) hol.closure_basis.push_back(unvec(q.col(k), n));
  return hol;
}

// ---------------------------------------------------------------------------

namespace {

MatrixXd common_kernel(const std::vector<MatrixXd>& ops, Eigen::Index n, double tol, double floor) {
  if (ops.empty()) return MatrixXd::Identity(n, n);
  MatrixXd stacked(n * static_cast<Eigen::Index>(ops.size()), n);
  for (size_t k = 0; k < ops.size(); ++k) stacked.middleRows(static_cast<Eigen::Index>(k) * n, n) = ops[k];
  return null_space(stacked, tol, floor);
}

// Smallest subspace containing `seed` and invariant under every operator.
MatrixXd invariant_closure(const std::vector<MatrixXd>& ops, const MatrixXd& seed, double tol) {
  MatrixXd v = orth(seed, tol, 1.0, false);
  while (true) {
    std::vector<VectorXd> cols = columns(v);
    for (const auto& o : ops)
      for (Eigen::Index j = 0; j < v.cols(); ++j) cols.emplace_back(o * v.col(j));
    MatrixXd next = orth(hstack(cols, v.rows()), tol, 1.0, false);
    if (next.cols() == v.cols()) return next;
    v = std::move(next);
  }
}

// Groups ascending eigenvalues whose consecutive gaps are below `gap`.
std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(const VectorXd& ev, double gap) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= ev.size(); ++i)
    if (i == ev.size() || ev(i) - ev(i - 1) > gap) {
      out.emplace_back(start, i - start);
      start = i;
    }
  return out;
}

enum class Round { Irreducible, Reducible, Degenerate };

Round certify_round(const std::vector<MatrixXd>& ops, std::mt19937_64& rng, double tol) {
  const Eigen::Index n = ops.front().rows();
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd l = MatrixXd::Zero(n, n);
  for (const auto& o : ops) l += normal(rng) * o;
  // -L^2 = L^T L for skew L: eigenvalues omega^2 come in pairs.
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(l.transpose() * l);
  const VectorXd& ev = es.eigenvalues();
  const double top = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  const auto groups = clusters(ev, std::sqrt(tol) * top);
  for (const auto& [start, len] : groups) {
    // A repeated eigenplane (or a kernel of dimension > 1) does not pin down
    // which of its subspaces an invariant subspace would contain.
    const bool kernel = ev(start) <= std::sqrt(tol) * top;
    if (kernel ? len > 1 : len > 2) return Round::Degenerate;
  }
  for (const auto& [start, len] : groups) {
    const MatrixXd w = es.eigenvectors().middleCols(start, len);
    if (invariant_closure(ops, w, tol).cols() < n) return Round::Reducible;
  }
  return Round::Irreducible;
}

}  // namespace

InvariantSubspaceVerdict invariant_subspaces(const std::vector<MatrixXd>& ops, const MatrixXd& metric,
                                             std::mt19937_64& rng, int certification_rounds,
                                             const Tolerances& tol) {
  const Eigen::Index n = metric.rows();
  for (const auto& o : ops)
    if (o.rows() != n || o.cols() != n) throw Error(ErrorCode::DimensionMismatch, "operator has wrong shape");

  InvariantSubspaceVerdict v;
  v.invariant = Subspace::zero(n, tol.sub);
  if (n <= 1) {
    v.irreducible = true;
    v.commutant_dim = 1;
    return v;
  }

  // Orthonormal coordinates y = L^T x, where the operators become skew.
  const MatrixXd frame = orthonormal_frame(metric);
  const MatrixXd lt = cholesky_lower(metric, 0.0).transpose();
  std::vector<MatrixXd> skew;
  double scale = 0.0;
  for (const auto& o : ops) {
    MatrixXd s = lt * o * frame;
    s = 0.5 * (s - s.transpose());
    scale = std::max(scale, s.norm());
    skew.push_back(std::move(s));
  }
  // Drop operators that are zero at the working tolerance.
  std::vector<MatrixXd> live;
  for (auto& s : skew)
    if (s.norm() > tol.alg * scale) live.push_back(s / scale);

  auto to_input_coords = [&](const MatrixXd& y_basis) {
    return Subspace::span(frame * y_basis, tol.sub, 1.0);
  };

  if (live.empty()) {
    v.irreducible = false;
    v.split_flat = true;
    v.invariant = Subspace::span(VectorXd::Unit(n, 0), tol.sub, 1.0);
    v.commutant_dim = static_cast<int>(n * (n + 1) / 2);
    return v;
  }

  // Symmetric commutant: S = sum c_ab E_ab with [S, O] = 0 for every O.
  std::vector<MatrixXd> sym_basis;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a; b < n; ++b) {
      MatrixXd e = MatrixXd::Zero(n, n);
      e(a, b) = e(b, a) = (a == b) ? 1.0 : std::sqrt(0.5);
      sym_basis.push_back(std::move(e));
    }
  const Eigen::Index p = static_cast<Eigen::Index>(sym_basis.size());
  MatrixXd system(n * n * static_cast<Eigen::Index>(live.size()), p);
  for (Eigen::Index c = 0; c < p; ++c)
    for (size_t k = 0; k < live.size(); ++k) {
      const MatrixXd& o = live[k];
      const MatrixXd& e = sym_basis[static_cast<size_t>(c)];
      system.block(static_cast<Eigen::Index>(k) * n * n, c, n * n, 1) = vec(e * o - o * e);
    }
  const MatrixXd commutant = null_space(system, tol.alg, 1.0);
  v.commutant_dim = static_cast<int>(commutant.cols());
  v.irreducible = v.commutant_dim <= 1;

  if (!v.irreducible) {
    const MatrixXd kernel = common_kernel(live, n, tol.alg, 1.0);
    if (kernel.cols() > 0 && kernel.cols() < n) {
      v.invariant = to_input_coords(kernel);
      v.split_flat = true;
    } else {
      std::normal_distribution<double> normal(0.0, 1.0);
      MatrixXd s = MatrixXd::Zero(n, n);
      for (Eigen::Index c = 0; c < commutant.cols(); ++c) {
        MatrixXd part = MatrixXd::Zero(n, n);
        for (Eigen::Index q = 0; q < p; ++q) part += commutant(q, c) * sym_basis[static_cast<size_t>(q)];
        s += normal(rng) * part;
      }
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(s);
      const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
      const auto groups = clusters(es.eigenvalues(), std::sqrt(tol.alg) * top);
      auto smallest = std::min_element(groups.begin(), groups.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
      const MatrixXd w = es.eigenvectors().middleCols(smallest->first, smallest->second);
      v.invariant = to_input_coords(invariant_closure(live, w, tol.alg));
    }
  }

  for (int r = 0; r < certification_rounds; ++r) {
    const Round round = certify_round(live, rng, tol.alg);
    ++v.seeds_run;
    if (round == Round::Degenerate) continue;
    ++v.seeds_decisive;
    const bool says_irreducible = round == Round::Irreducible;
    if (says_irreducible != v.irreducible)
      throw Error(ErrorCode::Inconclusive,
                  std::string("randomised certification round ") + std::to_string(r) + " reports " +
                      (says_irreducible ? "irreducible" : "reducible") + " against the commutant verdict");
    ++v.seeds_agreeing;
  }
  return v;
}

InvariantSubspaceVerdict invariant_subspaces(const std::vector<MatrixXd>& ops, std::mt19937_64& rng,
                                             int certification_rounds, const Tolerances& tol) {
  const Eigen::Index n = ops.empty() ? 0 : ops.front().rows();
  return invariant_subspaces(ops, MatrixXd::Identity(n, n), rng, certification_rounds, tol);
}

Subspace flat_factor_detector(const HolonomyAlgebra& hol, const CurvatureTensor& ct, const Tolerances& tol) {
  const Eigen::Index n = ct.dim();
  const Subspace kernel = Subspace::from_orthonormal(common_kernel(hol.closure_basis, n, tol.alg, 1.0), tol.sub);
  return kernel.intersect(nullity_space(ct, tol));
}

}  // namespace nullitylab
