#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nullitylab/holonomy.hpp"
#include "nullitylab/family.hpp"
#include "nullitylab/symmetry.hpp"

namespace nullitylab {

const char* version();

struct StructureSummary {
  bool solvable = false;
  std::optional<int> nilpotent_step;
  bool reductive = false;
  std::vector<double> unimodular_defects;
  int center_dim = 0;
  int radical_dim = 0;
  std::vector<int> derived_series_dims;
  std::vector<int> lower_central_dims;
  std::vector<std::vector<double>> killing_form;  ///< row-major
  bool operator==(const StructureSummary&) const = default;
};

struct RicciSummary {
  std::vector<double> eigenvalues;  ///< ascending
  double scalar = 0.0;
  bool operator==(const RicciSummary&) const = default;
};

struct SymmetrySummary {
  int index = 0;
  int co_index = 0;
  bool relative = true;  ///< computed inside the input algebra only
  int abelian_part_dim = 0;
  int null_jacobi_dim = 0;
  bool operator==(const SymmetrySummary&) const = default;
};

struct HolonomySummary {
  int closure_dim = 0;
  int depth = 0;
  std::string verdict;  ///< "irreducible" or "reducible"
  int flat_factor_dim = 0;
  int commutant_dim = 0;
  int seeds_run = 0;
  int seeds_decisive = 0;
  int seeds_agreeing = 0;
  bool operator==(const HolonomySummary&) const = default;
};

struct WitnessSummary {
  std::vector<double> y;
  int field = -1;
  std::vector<double> direction;
  double nomizu_norm = 0.0;
  double jacobi_norm = 0.0;
  double ad_squared_norm = 0.0;
  double ad_norm = 0.0;
  double threshold = 0.0;
  bool passed = false;
  bool operator==(const WitnessSummary&) const = default;
};

struct AnalysisReport {
  std::string input_digest;  ///< SHA-256 of the input file, hex
  std::string tool_version;
  Tolerances tolerances;
  std::uint64_t seed = kDefaultSeed;
  int dim = 0;
  std::vector<std::string> basis;
  ValidationReport validation;
  // The sections below are absent when validation fails.
  std::optional<StructureSummary> structure;
  std::optional<ChainVerdict> chain;
  std::optional<RicciSummary> ricci;
  std::optional<SymmetrySummary> symmetry;
  std::optional<HolonomySummary> holonomy;
  std::vector<WitnessSummary> witnesses;
  std::vector<std::string> warnings;

  bool operator==(const AnalysisReport&) const = default;
};

/// Runs every module on one algebra. Numerical errors (IllConditioned,
/// Inconclusive, ...) propagate.
AnalysisReport analyze(const MetricLieAlgebra& alg, const std::string& input_digest, const Tolerances& tol = {},
                       std::uint64_t seed = kDefaultSeed, int certification_rounds = 20);

/// Pretty-printed JSON with a trailing newline; identical inputs give
/// identical bytes.
std::string report_to_json(const AnalysisReport& report);
/// Throws ParseError on malformed or incomplete input.
AnalysisReport report_from_json(const std::string& text);

std::string validation_to_json(const ValidationReport& v);
std::string certificate_to_json(const Section8Certificate& cert, const Tolerances& tol, std::uint64_t seed);
std::string transport_to_json(const TransportReport& report, int d, int v, int z);

}  // namespace nullitylab
