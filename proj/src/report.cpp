#include "nullitylab/report.hpp"

#include <json.hpp>

#ifndef NULLITYLAB_VERSION
#define NULLITYLAB_VERSION "0.0.0"
#endif

namespace nullitylab {

using json = nlohmann::ordered_json;

const char* version() { return NULLITYLAB_VERSION; }

namespace {

std::vector<double> to_std(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<std::vector<double>> rows(const MatrixXd& m) {
  std::vector<std::vector<double>> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_std(m.row(i).transpose()));
  return out;
}

StructureSummary summarize(const StructureReport& s) {
  StructureSummary out;
  out.solvable = s.solvable;
  out.nilpotent_step = s.nilpotent_step;
  out.reductive = s.reductive;
  out.unimodular_defects = s.unimodular_defects;
  out.center_dim = s.center_dim;
  out.radical_dim = s.radical_dim;
  out.derived_series_dims = s.derived_series_dims;
  out.lower_central_dims = s.lower_central_dims;
  out.killing_form = rows(s.killing_form);
  return out;
}

WitnessSummary summarize(const AdaptedWitness& w) {
  WitnessSummary out;
  out.y = to_std(w.y);
  out.field = w.field;
  out.direction = to_std(w.direction);
  out.nomizu_norm = w.certificate.nomizu_norm;
  out.jacobi_norm = w.certificate.jacobi_norm;
  out.ad_squared_norm = w.certificate.ad_squared_norm;
  out.ad_norm = w.certificate.ad_norm;
  out.threshold = w.certificate.threshold;
  out.passed = w.certificate.passed();
  return out;
}

}  // namespace

AnalysisReport analyze(const MetricLieAlgebra& alg, const std::string& input_digest, const Tolerances& tol,
                       std::uint64_t seed, int certification_rounds) {
  AnalysisReport r;
  r.input_digest = input_digest;
  r.tool_version = version();
  r.tolerances = tol;
  r.seed = seed;
  r.dim = alg.dim();
  r.basis = alg.labels();
  r.validation = validate(alg, tol);
  if (!r.validation.valid()) return r;

  const StructureReport st = structure_predicates(alg, tol);
  r.structure = summarize(st);

  const ConnectionTable table = nomizu_table(alg, tol);
  const CurvatureTensor ct = curvature_table(alg, table);
  const DistributionChain chain = distribution_chain(alg, table, ct, tol);

  const HolonomyAlgebra hol = kostant_span(table, tol);
  const Subspace flat = flat_factor_detector(hol, ct, tol);
  std::mt19937_64 rng(seed);
  const InvariantSubspaceVerdict irr = invariant_subspaces(hol.closure_basis, alg.metric(), rng,
                                                           certification_rounds, tol);
  HolonomySummary h;
  h.closure_dim = hol.dim();
  h.depth = hol.depth;
  h.verdict = irr.irreducible ? "irreducible" : "reducible";
  h.flat_factor_dim = static_cast<int>(flat.dim());
  h.commutant_dim = irr.commutant_dim;
  h.seeds_run = irr.seeds_run;
  h.seeds_decisive = irr.seeds_decisive;
  h.seeds_agreeing = irr.seeds_agreeing;
  r.holonomy = h;

  const bool flat_factor = !chain.nullity.is_zero() && flat.equals(chain.nullity);
  r.chain = chain_report(chain, flat_factor);

  const RicciData ric = ricci(ct);
  r.ricci = RicciSummary{to_std(ric.eigenvalues), ric.scalar};

  const TransvectionSet ts = transvection_set(alg, table, ct, tol);
  r.symmetry = SymmetrySummary{ts.index_of_symmetry, ts.co_index, ts.relative,
                               static_cast<int>(ts.abelian_part_basis.cols()),
                               static_cast<int>(ts.null_jacobi_basis.cols())};
  r.warnings.emplace_back("index of symmetry is computed inside the input algebra; it is a lower bound");

  if (!r.chain->trivial_nullity) {
    try {
      r.witnesses.push_back(summarize(adapted_transvection_witness(alg, table, ct, chain, tol)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoWitness) throw;
      r.warnings.emplace_back("no adapted transvection found inside the input algebra");
    }
  }

  const bool obstructed = st.reductive || (st.nilpotent_step && *st.nilpotent_step <= 2);
  if (obstructed && flat.is_zero() && !chain.nullity.is_zero())
    r.warnings.emplace_back("non-trivial nullity on a reductive or 2-step nilpotent algebra without flat factor");
  if (!flat.is_zero() && !flat.equals(chain.nullity))
    r.warnings.emplace_back("flat factor is a proper subspace of the nullity");
  if (!irr.irreducible && !flat.is_zero())
    r.warnings.emplace_back("holonomy is reducible with a flat factor: the space splits locally");
  return r;
}

// ---------------------------------------------------------------------------

namespace {

json tol_json(const Tolerances& t) { return json{{"tol_alg", t.alg}, {"tol_sub", t.sub}, {"tol_pd", t.pd}}; }

json validation_json(const ValidationReport& v) {
  json out = json::object();
  out["valid"] = v.valid();
  json list = json::array();
  for (const auto& x : v.violations) list.push_back(json{{"invariant", x.invariant}, {"residual", x.residual}});
  out["violations"] = list;
  return out;
}

json chain_json(const ChainVerdict& c) {
  return json{{"n", c.n},
              {"dim_nullity", c.dim_nullity},
              {"dim_adapted", c.dim_adapted},
              {"dim_osc1", c.dim_osc1},
              {"dim_osc2", c.dim_osc2},
              {"dim_bounded", c.dim_bounded},
              {"conullity", c.conullity},
              {"nullity_in_osc1", c.nullity_in_osc1},
              {"osc1_in_osc2", c.osc1_in_osc2},
              {"osc2_in_bounded", c.osc2_in_bounded},
              {"nullity_nonzero", c.nullity_nonzero},
              {"nullity_strict_in_osc1", c.nullity_strict_in_osc1},
              {"osc1_strict_in_osc2", c.osc1_strict_in_osc2},
              {"bounded_strict_in_tm", c.bounded_strict_in_tm},
              {"osc2_equals_bounded", c.osc2_equals_bounded},
              {"trivial_nullity", c.trivial_nullity},
              {"flat", c.flat},
              {"chain_holds", c.chain_holds},
              {"conullity_three", c.conullity_three},
              {"codim_osc1_is_two", c.codim_osc1_is_two},
              {"codim_bounded_is_one", c.codim_bounded_is_one},
              {"status", c.status}};
}

template <class T>
T need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad value for '") + key + "': " + e.what());
  }
}

ChainVerdict chain_from(const json& j) {
  ChainVerdict c;
  c.n = need<int>(j, "n");
  c.dim_nullity = need<int>(j, "dim_nullity");
  c.dim_adapted = need<int>(j, "dim_adapted");
  c.dim_osc1 = need<int>(j, "dim_osc1");
  c.dim_osc2 = need<int>(j, "dim_osc2");
  c.dim_bounded = need<int>(j, "dim_bounded");
  c.conullity = need<int>(j, "conullity");
  c.nullity_in_osc1 = need<bool>(j, "nullity_in_osc1");
  c.osc1_in_osc2 = need<bool>(j, "osc1_in_osc2");
  c.osc2_in_bounded = need<bool>(j, "osc2_in_bounded");
  c.nullity_nonzero = need<bool>(j, "nullity_nonzero");
  c.nullity_strict_in_osc1 = need<bool>(j, "nullity_strict_in_osc1");
  c.osc1_strict_in_osc2 = need<bool>(j, "osc1_strict_in_osc2");
  c.bounded_strict_in_tm = need<bool>(j, "bounded_strict_in_tm");
  c.osc2_equals_bounded = need<bool>(j, "osc2_equals_bounded");
  c.trivial_nullity = need<bool>(j, "trivial_nullity");
  c.flat = need<bool>(j, "flat");
  c.chain_holds = need<bool>(j, "chain_holds");
  c.conullity_three = need<bool>(j, "conullity_three");
  c.codim_osc1_is_two = need<bool>(j, "codim_osc1_is_two");
  c.codim_bounded_is_one = need<bool>(j, "codim_bounded_is_one");
  c.status = need<std::string>(j, "status");
  return c;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string report_to_json(const AnalysisReport& r) {
  json j = json::object();
  j["tool_version"] = r.tool_version;
  j["input_digest"] = r.input_digest;
  j["tolerances"] = tol_json(r.tolerances);
  j["seed"] = r.seed;
  j["dim"] = r.dim;
  j["basis"] = r.basis;
  j["validation"] = validation_json(r.validation);

  if (r.structure) {
    const auto& s = *r.structure;
    j["structure"] = json{{"solvable", s.solvable},
                          {"nilpotent_step", s.nilpotent_step ? json(*s.nilpotent_step) : json(nullptr)},
                          {"reductive", s.reductive},
                          {"unimodular_defects", s.unimodular_defects},
                          {"center_dim", s.center_dim},
                          {"radical_dim", s.radical_dim},
                          {"derived_series_dims", s.derived_series_dims},
                          {"lower_central_dims", s.lower_central_dims},
                          {"killing_form", s.killing_form}};
  } else {
    j["structure"] = nullptr;
  }
  j["chain"] = r.chain ? chain_json(*r.chain) : json(nullptr);
  j["ricci"] = r.ricci ? json{{"eigenvalues", r.ricci->eigenvalues}, {"scalar", r.ricci->scalar}} : json(nullptr);
  if (r.symmetry) {
    const auto& y = *r.symmetry;
    j["symmetry"] = json{{"index", y.index},
                         {"co_index", y.co_index},
                         {"relative", y.relative},
                         {"abelian_part_dim", y.abelian_part_dim},
                         {"null_jacobi_dim", y.null_jacobi_dim}};
  } else {
    j["symmetry"] = nullptr;
  }
  if (r.holonomy) {
    const auto& h = *r.holonomy;
    j["holonomy"] = json{{"closure_dim", h.closure_dim},       {"depth", h.depth},
                         {"verdict", h.verdict},               {"flat_factor_dim", h.flat_factor_dim},
                         {"commutant_dim", h.commutant_dim},   {"seeds_run", h.seeds_run},
                         {"seeds_decisive", h.seeds_decisive}, {"seeds_agreeing", h.seeds_agreeing}};
  } else {
    j["holonomy"] = nullptr;
  }
  json ws = json::array();
  for (const auto& w : r.witnesses)
    ws.push_back(json{{"y", w.y},
                      {"field", w.field},
                      {"direction", w.direction},
                      {"nomizu_norm", w.nomizu_norm},
                      {"jacobi_norm", w.jacobi_norm},
                      {"ad_squared_norm", w.ad_squared_norm},
                      {"ad_norm", w.ad_norm},
                      {"threshold", w.threshold},
                      {"passed", w.passed}});
  j["witnesses"] = ws;
  j["warnings"] = r.warnings;
  return dump(j);
}

AnalysisReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("report is not valid JSON: ") + e.what());
  }
  AnalysisReport r;
  r.tool_version = need<std::string>(j, "tool_version");
  r.input_digest = need<std::string>(j, "input_digest");
  const json t = need<json>(j, "tolerances");
  r.tolerances = {need<double>(t, "tol_alg"), need<double>(t, "tol_sub"), need<double>(t, "tol_pd")};
  r.seed = need<std::uint64_t>(j, "seed");
  r.dim = need<int>(j, "dim");
  r.basis = need<std::vector<std::string>>(j, "basis");

  const json v = need<json>(j, "validation");
  for (const auto& x : need<json>(v, "violations"))
    r.validation.violations.push_back({need<std::string>(x, "invariant"), need<double>(x, "residual")});

  const json s = need<json>(j, "structure");
  if (!s.is_null()) {
    StructureSummary out;
    out.solvable = need<bool>(s, "solvable");
    const json step = need<json>(s, "nilpotent_step");
    if (!step.is_null()) out.nilpotent_step = need<int>(s, "nilpotent_step");
    out.reductive = need<bool>(s, "reductive");
    out.unimodular_defects = need<std::vector<double>>(s, "unimodular_defects");
    out.center_dim = need<int>(s, "center_dim");
    out.radical_dim = need<int>(s, "radical_dim");
    out.derived_series_dims = need<std::vector<int>>(s, "derived_series_dims");
    out.lower_central_dims = need<std::vector<int>>(s, "lower_central_dims");
    out.killing_form = need<std::vector<std::vector<double>>>(s, "killing_form");
    r.structure = out;
  }
  const json c = need<json>(j, "chain");
  if (!c.is_null()) r.chain = chain_from(c);
  const json ri = need<json>(j, "ricci");
  if (!ri.is_null()) r.ricci = RicciSummary{need<std::vector<double>>(ri, "eigenvalues"), need<double>(ri, "scalar")};
  const json sy = need<json>(j, "symmetry");
  if (!sy.is_null())
    r.symmetry = SymmetrySummary{need<int>(sy, "index"), need<int>(sy, "co_index"), need<bool>(sy, "relative"),
                                 need<int>(sy, "abelian_part_dim"), need<int>(sy, "null_jacobi_dim")};
  const json h = need<json>(j, "holonomy");
  if (!h.is_null()) {
    HolonomySummary out;
    out.closure_dim = need<int>(h, "closure_dim");
    out.depth = need<int>(h, "depth");
    out.verdict = need<std::string>(h, "verdict");
    out.flat_factor_dim = need<int>(h, "flat_factor_dim");
    out.commutant_dim = need<int>(h, "commutant_dim");
    out.seeds_run = need<int>(h, "seeds_run");
    out.seeds_decisive = need<int>(h, "seeds_decisive");
    out.seeds_agreeing = need<int>(h, "seeds_agreeing");
    r.holonomy = out;
  }
  for (const auto& w : need<json>(j, "witnesses")) {
    WitnessSummary out;
    out.y = need<std::vector<double>>(w, "y");
    out.field = need<int>(w, "field");
    out.direction = need<std::vector<double>>(w, "direction");
    out.nomizu_norm = need<double>(w, "nomizu_norm");
    out.jacobi_norm = need<double>(w, "jacobi_norm");
    out.ad_squared_norm = need<double>(w, "ad_squared_norm");
    out.ad_norm = need<double>(w, "ad_norm");
    out.threshold = need<double>(w, "threshold");
    out.passed = need<bool>(w, "passed");
    r.witnesses.push_back(std::move(out));
  }
  r.warnings = need<std::vector<std::string>>(j, "warnings");
  return r;
}

std::string validation_to_json(const ValidationReport& v) { return dump(validation_json(v)); }

std::string certificate_to_json(const Section8Certificate& cert, const Tolerances& tol, std::uint64_t seed) {
  json j = json::object();
  j["tool_version"] = version();
  j["tolerances"] = tol_json(tol);
  j["seed"] = seed;
  j["d"] = cert.d;
  j["n"] = cert.n;
  j["a"] = cert.a;
  j["passed"] = cert.passed();
  const auto* fail = cert.first_failure();
  j["first_failure"] = fail ? json(fail->name) : json(nullptr);
  json clauses = json::array();
  for (const auto& c : cert.clauses)
    clauses.push_back(json{{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}, {"detail", c.detail}});
  j["clauses"] = clauses;
  j["ricci_eigenvalues"] = to_std(cert.ricci_eigenvalues);
  j["scalar"] = cert.scalar;
  j["dims"] = json{{"nullity", cert.dim_nullity},
                   {"osc1", cert.dim_osc1},
                   {"osc2", cert.dim_osc2},
                   {"bounded", cert.dim_bounded},
                   {"conullity", cert.conullity}};
  j["index_of_symmetry"] = cert.index_of_symmetry;
  j["co_index"] = cert.co_index;
  j["holonomy_dim"] = cert.holonomy_dim;
  j["trace_ad_action"] = cert.trace_ad_action;
  j["witness"] = to_std(cert.witness);
  j["notes"] = json::array({"the computed nullity is span{E_2, ..., E_{d-1}}; E_d is not a nullity vector",
                            "the computed orthogonal complement of the nullity is span{E_1, E_d, A}",
                            "the witness is Y = E_1 - E_3 - ... - E_{d-1} = -(1/a) nabla_{E_2} A"});
  return dump(j);
}

std::string transport_to_json(const TransportReport& report, int d, int v, int z) {
  json j = json::object();
  j["tool_version"] = version();
  j["d"] = d;
  j["v"] = v;
  j["z"] = z;
  j["step"] = report.step;
  j["witness"] = to_std(report.witness);
  json samples = json::array();
  for (const auto& s : report.samples)
    samples.push_back(json{{"t", s.t},
                           {"group_norm", s.group_norm},
                           {"formula_norm", s.formula_norm},
                           {"relative_error", s.relative_error},
                           {"second_derivative", s.second_derivative}});
  j["samples"] = samples;
  j["max_relative_error"] = report.max_relative_error;
  j["max_second_derivative"] = report.max_second_derivative;
  return dump(j);
}

}  // namespace nullitylab
