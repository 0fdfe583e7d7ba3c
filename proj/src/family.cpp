#include "nullitylab/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace nullitylab {

ExampleSpec ExampleSpec::paper_default(int d) {
  if (d < 3) throw Error(ErrorCode::BadDimension, "the example family needs d >= 3, got " + std::to_string(d));
  ExampleSpec s;
  s.d = d;
  s.a = default_scale(d);
  s.mode = ExampleMode::PaperDefault;
  const int m = d - 1;
  s.action = MatrixXd::Zero(d, d);
  s.action.topLeftCorner(m, m) = s.a * skew_ones(m);
  s.action(0, m) = s.a;
  s.action(m, 0) = -s.a;
  s.action(m, m) = s.a;
  return s;
}

ExampleSpec ExampleSpec::custom(MatrixXd action) {
  if (action.rows() != action.cols() || action.rows() < 1)
    throw Error(ErrorCode::BadDimension, "custom action must be a non-empty square matrix");
  ExampleSpec s;
  s.d = static_cast<int>(action.rows());
  s.action = std::move(action);
  s.a = 0.0;
  s.mode = ExampleMode::CustomA;
  return s;
}

MatrixXd skew_ones(int m) {
  MatrixXd s = MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      s(i, j) = 1.0;
      s(j, i) = -1.0;
    }
  return s;
}

double default_scale(int d) {
  const double n = d + 1.0;
  return 1.0 / std::sqrt(3.0 + (n - 2.0) * (n - 3.0));
}

MetricLieAlgebra build_example(const ExampleSpec& spec) {
  const int d = spec.d;
  const int n = d + 1;
  std::vector<std::string> labels;
  for (int i = 1; i <= d; ++i) labels.push_back("E" + std::to_string(i));
  labels.emplace_back("A");

  // [A, E_i] = sum_k A_{ki} E_k; translations commute.
  std::vector<MetricLieAlgebra::UpperBracket> brackets;
  for (int i = 0; i < d; ++i) {
    VectorXd c = VectorXd::Zero(n);
    c.head(d) = -spec.action.col(i);  // [E_i, A] = -[A, E_i]
    if (c.cwiseAbs().maxCoeff() > 0.0) brackets.push_back({i, d, c});
  }
  return MetricLieAlgebra::from_upper(std::move(labels), brackets);
}

std::vector<MatrixXd> matrix_basis(const ExampleSpec& spec) {
  const int d = spec.d;
  std::vector<MatrixXd> basis;
  for (int i = 0; i < d; ++i) {
    MatrixXd e = MatrixXd::Zero(d + 1, d + 1);
    e(i, d) = 1.0;
    basis.push_back(std::move(e));
  }
  MatrixXd a = MatrixXd::Zero(d + 1, d + 1);
  a.topLeftCorner(d, d) = spec.action;
  basis.push_back(std::move(a));
  return basis;
}

MatrixXd expected_nabla_last(const ExampleSpec& spec) {
  const int d = spec.d;
  MatrixXd m = MatrixXd::Zero(d + 1, d + 1);
  m(d - 1, d) = spec.a;   // nabla_A E_d = a E_d
  m(d, d - 1) = -spec.a;  // nabla_{E_d} E_d = -a A
  return m;
}

MatrixXd expected_nabla_action(const ExampleSpec& spec) {
  const int d = spec.d;
  const int m = d - 1;
  MatrixXd out = MatrixXd::Zero(d + 1, d + 1);
  out.topLeftCorner(m, m) = -spec.a * skew_ones(m);
  out(0, m) = -spec.a;
  out(m, 0) = spec.a;
  return out;
}

VectorXd expected_ricci_spectrum(int d) {
  const int n = d + 1;
  const double a2 = default_scale(d) * default_scale(d);
  VectorXd ev = VectorXd::Zero(n);
  ev(0) = a2 * (-1.0 - std::sqrt(5.0)) / 2.0;
  ev(1) = -a2;
  ev(n - 1) = a2 * (-1.0 + std::sqrt(5.0)) / 2.0;
  std::sort(ev.data(), ev.data() + n);
  return ev;
}

// ---------------------------------------------------------------------------

AppendixVerdict appendix_invariance_check(int d, const Tolerances& tol) {
  if (d < 3) throw Error(ErrorCode::BadDimension, "appendix check needs d >= 3");
  AppendixVerdict v;
  v.m = d - 1;
  const MatrixXd s = skew_ones(v.m);
  // -M^2 = M^T M: each eigenplane of M is an eigenspace with eigenvalue omega^2.
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s.transpose() * s);
  const VectorXd& ev = es.eigenvalues();
  const double top = std::max(ev.maxCoeff(), 1e-300);
  const double gap_tol = std::sqrt(tol.alg) * top;

  std::vector<std::pair<Eigen::Index, Eigen::Index>> atoms;
  Eigen::Index start = 0;
  v.min_cluster_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i <= ev.size(); ++i) {
    if (i < ev.size() && ev(i) - ev(i - 1) <= gap_tol) continue;
    if (i < ev.size()) v.min_cluster_gap = std::min(v.min_cluster_gap, ev(i) - ev(i - 1));
    atoms.emplace_back(start, i - start);
    start = i;
  }
  std::ostringstream gaps;
  for (Eigen::Index i = 1; i < ev.size(); ++i) gaps << ' ' << ev(i) - ev(i - 1);
  for (const auto& [b, len] : atoms) {
    const bool kernel = ev(b) <= gap_tol;
    if (kernel ? len > 1 : len != 2)
      throw Error(ErrorCode::EigenDegeneracy, "eigenvalue clusters of M do not separate (gaps:" + gaps.str() + ")");
    v.atom_dims.push_back(static_cast<int>(len));
    if (kernel) {
      VectorXd k = es.eigenvectors().col(b);
      if (k(0) < 0) k = -k;
      v.kernel = k;
    }
  }
  if (!std::isfinite(v.min_cluster_gap)) v.min_cluster_gap = 0.0;

  const auto count = static_cast<int>(atoms.size());
  const VectorXd e1 = VectorXd::Unit(v.m, 0);
  for (unsigned mask = 1; mask < (1u << count); ++mask) {
    std::vector<VectorXd> cols;
    for (int k = 0; k < count; ++k)
      if (mask & (1u << k))
        for (Eigen::Index c = 0; c < atoms[static_cast<size_t>(k)].second; ++c)
          cols.emplace_back(es.eigenvectors().col(atoms[static_cast<size_t>(k)].first + c));
    const MatrixXd basis = hstack(cols, v.m);
    ++v.subspaces_enumerated;
    if ((basis.transpose() * e1).norm() <= tol.sub) ++v.contained_in_w;
  }
  v.none_contained = v.contained_in_w == 0;
  return v;
}

// ---------------------------------------------------------------------------

bool Section8Certificate::passed() const { return first_failure() == nullptr; }

const CertificateClause* Section8Certificate::first_failure() const {
  for (const auto& c : clauses)
    if (!c.passed) return &c;
  return nullptr;
}

void require_passed(const Section8Certificate& cert) {
  if (const auto* c = cert.first_failure())
    throw Error(ErrorCode::CertificateFailure, c->name + " (residual " + std::to_string(c->residual) + ")");
}

Section8Certificate verify_section8(const ExampleSpec& spec, const Tolerances& tol, std::uint64_t seed,
                                    int certification_rounds) {
  if (spec.mode != ExampleMode::PaperDefault)
    throw Error(ErrorCode::BadMode, "certificate is defined only for the default family");
  Section8Certificate cert;
  cert.d = spec.d;
  cert.n = spec.n();
  cert.a = spec.a;
  const int d = spec.d;
  const int n = spec.n();
  const double a2 = spec.a * spec.a;
  auto clause = [&](std::string name, bool ok, double residual, std::string detail = {}) {
    cert.clauses.push_back({std::move(name), ok, residual, std::move(detail)});
  };

  const MetricLieAlgebra alg = build_example(spec);
  const ConnectionTable table = nomizu_table(alg, tol);
  const CurvatureTensor ct = curvature_table(alg, table);

  double transv = 0.0;
  for (int i = 0; i < d - 1; ++i) transv = std::max(transv, table.op(i).cwiseAbs().maxCoeff());
  clause("connection_transvections", transv < 1e-12, transv, "nabla E_1 .. nabla E_{d-1} vanish");
  const double last = (table.op(d - 1) - expected_nabla_last(spec)).cwiseAbs().maxCoeff();
  clause("connection_nabla_last", last < 1e-12, last, "nabla E_d block matrix");
  const double act = (table.op(d) - expected_nabla_action(spec)).cwiseAbs().maxCoeff();
  clause("connection_nabla_action", act < 1e-12, act, "nabla A block matrix");

  const DistributionChain chain = distribution_chain(alg, table, ct, tol);
  MatrixXd expected_nu = MatrixXd::Zero(n, d - 2);
  for (int k = 0; k < d - 2; ++k) expected_nu(k + 1, k) = 1.0;
  const Subspace expected = d > 2 ? Subspace::span(expected_nu, tol.sub, 1.0) : Subspace::zero(n);
  const double angle = chain.nullity.max_principal_angle(expected);
  clause("nullity_span", chain.nullity.dim() == d - 2 && angle <= tol.sub, angle,
         "nullity = span{E_2..E_{d-1}}");

  cert.dim_nullity = static_cast<int>(chain.nullity.dim());
  cert.dim_osc1 = static_cast<int>(chain.osc1.dim());
  cert.dim_osc2 = static_cast<int>(chain.osc2.dim());
  cert.dim_bounded = static_cast<int>(chain.bounded.dim());
  cert.conullity = chain.conullity;

  const HolonomyAlgebra hol = kostant_span(table, tol);
  cert.holonomy_dim = hol.dim();
  const Subspace flat = flat_factor_detector(hol, ct, tol);
  const ChainVerdict verdict = chain_report(chain, !flat.is_zero() && flat.equals(chain.nullity));
  const bool dims_ok = cert.dim_nullity == n - 3 && cert.dim_osc1 == n - 2 && cert.dim_osc2 == n - 1 &&
                       cert.dim_bounded == n - 1 && cert.conullity == 3;
  clause("chain_dimensions", dims_ok && verdict.chain_holds && verdict.osc2_equals_bounded,
         std::abs(cert.conullity - 3.0), "dims (nu, nu1, nu2, U) = (n-3, n-2, n-1, n-1), strict chain");

  const RicciData ric = ricci(ct);
  cert.ricci_eigenvalues = ric.eigenvalues;
  cert.scalar = ric.scalar;
  const double spec_err = (ric.eigenvalues - expected_ricci_spectrum(d)).cwiseAbs().maxCoeff();
  clause("ricci_spectrum", spec_err <= 1e-9, spec_err, "{0 x (n-3), -a^2, a^2(-1 +- sqrt5)/2}");
  const double expected_scalar = -2.0 / (3.0 + (n - 2.0) * (n - 3.0));
  const double scal_err = std::max(std::abs(ric.scalar + 2.0 * a2), std::abs(ric.scalar - expected_scalar));
  clause("scalar_curvature", scal_err <= 1e-9, scal_err, "scal = -2 a^2");

  // Coordinate planes alone only see K(E_d, A) = -a^2; planes span{e_i + e_j, e_k}
  // pick up the positive values.
  double kmin = 0.0, kmax = 0.0;
  auto sample = [&](const VectorXd& x, const VectorXd& y) {
    const double k = sectional(ct, x, y, tol.alg);
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      sample(VectorXd::Unit(n, i), VectorXd::Unit(n, j));
      for (int k = 0; k < n; ++k)
        if (k != i && k != j) sample(VectorXd::Unit(n, i) + VectorXd::Unit(n, j), VectorXd::Unit(n, k));
    }
  clause("sectional_both_signs", kmin < -tol.alg && kmax > tol.alg, std::min(-kmin, kmax));

  std::mt19937_64 rng(seed);
  const InvariantSubspaceVerdict irr =
      invariant_subspaces(hol.closure_basis, alg.metric(), rng, certification_rounds, tol);
  clause("irreducible", irr.irreducible, irr.commutant_dim - 1.0,
         std::to_string(irr.seeds_agreeing) + "/" + std::to_string(irr.seeds_run) + " rounds agree");
  clause("flat_factor_trivial", flat.is_zero(), static_cast<double>(flat.dim()));

  const AppendixVerdict app = appendix_invariance_check(d, tol);
  clause("skew_ones_no_invariant_subspace", app.none_contained, app.contained_in_w);

  const StructureReport st = structure_predicates(alg, tol);
  clause("solvable", st.solvable, 0.0);
  cert.trace_ad_action = st.unimodular_defects.back();
  clause("non_unimodular", std::abs(cert.trace_ad_action) > 1e-8, std::abs(cert.trace_ad_action),
         "trace(ad A) != 0");

  const TransvectionSet ts = transvection_set(alg, table, ct, tol);
  cert.index_of_symmetry = ts.index_of_symmetry;
  cert.co_index = ts.co_index;
  clause("index_of_symmetry", ts.index_of_symmetry == n - 2 && ts.co_index == 2, std::abs(ts.co_index - 2.0),
         "relative index n-2, co-index 2");

  const AdaptedWitness w = adapted_transvection_witness(alg, table, ct, chain, tol);
  cert.witness = w.y;
  clause("witness_transvection", w.certificate.passed(),
         std::max({w.certificate.nomizu_norm, w.certificate.jacobi_norm, w.certificate.ad_squared_norm}),
         "Gamma_Y = 0, null Jacobi, ad_Y^2 = 0, ad_Y != 0");
  return cert;
}

// ---------------------------------------------------------------------------

namespace {

VectorXd coordinates(const MatrixXd& m, const std::vector<MatrixXd>& basis) {
  VectorXd c(static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i)
    c(static_cast<Eigen::Index>(i)) = (m.cwiseProduct(basis[i])).sum() / basis[i].squaredNorm();
  return c;
}

// Left-invariant frame: the bracket is the matrix commutator, i.e. the table.
//   <nabla_x y, z> = 1/2 (<[x,y],z> - <[y,z],x> + <[z,x],y>)
MatrixXd left_invariant_nabla(const MetricLieAlgebra& alg, const VectorXd& x) {
  const int n = alg.dim();
  const MatrixXd& g = alg.metric();
  const Eigen::LLT<MatrixXd> llt(g);
  MatrixXd out(n, n);
  for (int j = 0; j < n; ++j) {
    const VectorXd y = VectorXd::Unit(n, j);
    VectorXd w(n);
    for (int k = 0; k < n; ++k) {
      const VectorXd z = VectorXd::Unit(n, k);
      w(k) = 0.5 * (alg.bracket(x, y).dot(g * z) - alg.bracket(y, z).dot(g * x) + alg.bracket(z, x).dot(g * y));
    }
    out.col(j) = llt.solve(w);
  }
  return out;
}

}  // namespace

TransportReport transport_check(const ExampleSpec& spec, const VectorXd& v, int z,
                                const std::vector<double>& t_samples, const Tolerances& tol, double step) {
  const MetricLieAlgebra alg = build_example(spec);
  const int n = alg.dim();
  if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "direction has wrong length");
  if (z < 0 || z >= n) throw Error(ErrorCode::DimensionMismatch, "field index out of range");
  const ConnectionTable table = nomizu_table(alg, tol);
  const CurvatureTensor ct = curvature_table(alg, table);
  const DistributionChain chain = distribution_chain(alg, table, ct, tol);
  if (v.norm() == 0.0 || !chain.nullity.contains(v))
    throw Error(ErrorCode::NotInNullity, "direction is not in the nullity");

  const std::vector<MatrixXd> basis = matrix_basis(spec);
  const MatrixXd& g = alg.metric();
  auto gnorm = [&](const VectorXd& x) { return std::sqrt(x.dot(g * x)); };
  MatrixXd vmat = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) vmat += v(i) * basis[static_cast<size_t>(i)];

  // Z at exp(tY), translated back to the identity: Ad_{exp(-tY)} Z.
  auto pulled_back = [&](const MatrixXd& ymat, double t, const MatrixXd& zmat) {
    const MatrixXd fwd = (t * ymat).exp();
    const MatrixXd bwd = (-t * ymat).exp();
    return coordinates(bwd * zmat * fwd, basis);
  };

  TransportReport report;
  report.step = step;
  const VectorXd ze = VectorXd::Unit(n, z);
  const VectorXd growth = table.op(z) * v;

  // Witness geodesic for the second covariant derivative.
  std::optional<VectorXd> witness;
  if (!chain.nullity.is_zero() && !chain.nullity.is_full()) {
    try {
      witness = adapted_transvection_witness(alg, table, ct, chain, tol).y.normalized();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoWitness) throw;
    }
  }
  MatrixXd ymat = MatrixXd::Zero(n, n);
  MatrixXd nabla_y = MatrixXd::Zero(n, n);
  if (witness) {
    report.witness = *witness;
    for (int i = 0; i < n; ++i) ymat += (*witness)(i) * basis[static_cast<size_t>(i)];
    nabla_y = left_invariant_nabla(alg, *witness);
  }

  for (double t : t_samples) {
    TransportSample s;
    s.t = t;
    s.group_norm = gnorm(pulled_back(vmat, t, basis[static_cast<size_t>(z)]));
    s.formula_norm = gnorm(ze + t * growth);
    s.relative_error = std::abs(s.group_norm - s.formula_norm) / std::max(s.formula_norm, 1e-300);

    if (witness) {
      // D/dt W = W' + nabla_Y W in the left-invariant frame, Y constant.
      for (int k = 0; k < n; ++k) {
        const MatrixXd& zk = basis[static_cast<size_t>(k)];
        const VectorXd wm = pulled_back(ymat, t - step, zk);
        const VectorXd w0 = pulled_back(ymat, t, zk);
        const VectorXd wp = pulled_back(ymat, t + step, zk);
        const VectorXd d1 = (wp - wm) / (2.0 * step);
        const VectorXd d2 = (wp - 2.0 * w0 + wm) / (step * step);
        const VectorXd acc = d2 + 2.0 * nabla_y * d1 + nabla_y * nabla_y * w0;
        s.second_derivative = std::max(s.second_derivative, gnorm(acc));
      }
    }
    report.max_relative_error = std::max(report.max_relative_error, s.relative_error);
    report.max_second_derivative = std::max(report.max_second_derivative, s.second_derivative);
    report.samples.push_back(s);
  }
  return report;
}

}  // namespace nullitylab
