#include "nullitylab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "nullitylab/io.hpp"
#include "nullitylab/report.hpp"
#include "nullitylab/family.hpp"

namespace nullitylab {

int exit_code_for(ErrorCode code) {
  if (is_numerical(code)) return kExitNumerical;
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::BadDimension:
    case ErrorCode::BadMode:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotInNullity:
    case ErrorCode::PreconditionFailed:
      return kExitUsage;
    default:
      return kExitFailed;
  }
}

namespace {

struct Options {
  Tolerances tol;
  std::optional<std::uint64_t> seed;
  int rounds = 20;

  std::string file;
  std::string json_out;
  int dim = 0;
  std::string emit;
  std::string matrix;
  std::string dims;
  std::string out_dir;
  int v = 0;
  int z = 0;
  std::vector<double> t;
};

std::uint64_t parse_seed(const std::string& s, const char* source) {
  std::uint64_t x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorCode::ParseError, std::string(source) + " is not an unsigned integer: '" + s + "'");
  return x;
}

// --seed beats NULLITYLAB_SEED beats the built-in default.
std::uint64_t effective_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("NULLITYLAB_SEED")) return parse_seed(env, "NULLITYLAB_SEED");
  return kDefaultSeed;
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  int lo = 0, hi = 0;
  bool ok = dots != std::string::npos;
  if (ok) {
    const auto r1 = std::from_chars(s.data(), s.data() + dots, lo);
    const auto r2 = std::from_chars(s.data() + dots + 2, s.data() + s.size(), hi);
    ok = r1.ec == std::errc() && r1.ptr == s.data() + dots && r2.ec == std::errc() &&
         r2.ptr == s.data() + s.size() && lo <= hi;
  }
  if (!ok) throw Error(ErrorCode::ParseError, "--dims expects LO..HI with LO <= HI, got '" + s + "'");
  return {lo, hi};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_file_atomic(path, text);
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const MetricLieAlgebra alg = parse_algebra(read_text_file(o.file));
  const ValidationReport v = validate(alg, o.tol);
  out << validation_to_json(v);
  if (!v.valid()) err << "invalid algebra: " << v.violations.front().invariant << " violated\n";
  return v.valid() ? kExitOk : kExitFailed;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string text = read_text_file(o.file);
  const MetricLieAlgebra alg = parse_algebra(text);
  const AnalysisReport r = analyze(alg, sha256_hex(text), o.tol, effective_seed(o), o.rounds);
  emit(report_to_json(r), o.json_out, out);
  if (!r.validation.valid()) {
    err << "invalid algebra: " << r.validation.violations.front().invariant << " violated\n";
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_example(const Options& o, std::ostream& out, std::ostream&) {
  ExampleSpec spec;
  if (o.matrix.empty()) {
    spec = ExampleSpec::paper_default(o.dim);
  } else {
    MatrixXd a = parse_matrix_csv(read_text_file(o.matrix));
    if (a.rows() != o.dim || a.cols() != o.dim)
      throw Error(ErrorCode::BadDimension, "--matrix must be a " + std::to_string(o.dim) + " x " +
                                               std::to_string(o.dim) + " matrix");
    spec = ExampleSpec::custom(std::move(a));
  }
  emit(format_algebra(build_example(spec)), o.emit, out);
  return kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = effective_seed(o);
  const Section8Certificate cert = verify_section8(ExampleSpec::paper_default(o.dim), o.tol, seed, o.rounds);
  out << certificate_to_json(cert, o.tol, seed);
  if (const auto* f = cert.first_failure()) {
    err << "certificate failed: " << f->name << " (residual " << f->residual << ")\n";
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const auto [lo, hi] = parse_range(o.dims);
  if (lo < 3) throw Error(ErrorCode::BadDimension, "the example family needs d >= 3");
  const std::filesystem::path dir(o.out_dir);
  std::filesystem::create_directories(dir);
  const std::uint64_t seed = effective_seed(o);
  int failures = 0;
  for (int d = lo; d <= hi; ++d) {
    const ExampleSpec spec = ExampleSpec::paper_default(d);
    const MetricLieAlgebra alg = build_example(spec);
    const std::string text = format_algebra(alg);
    const std::string tag = (d < 10 ? "0" : "") + std::to_string(d);
    write_file_atomic(dir / ("example_d" + tag + ".toml"), text);
    const AnalysisReport r = analyze(alg, sha256_hex(text), o.tol, seed, o.rounds);
    write_file_atomic(dir / ("report_d" + tag + ".json"), report_to_json(r));
    const Section8Certificate cert = verify_section8(spec, o.tol, seed, o.rounds);
    write_file_atomic(dir / ("certificate_d" + tag + ".json"), certificate_to_json(cert, o.tol, seed));
    if (const auto* f = cert.first_failure()) {
      ++failures;
      err << "d = " << d << ": certificate failed at " << f->name << "\n";
    }
    out << "d = " << d << ": " << (cert.passed() ? "pass" : "FAIL") << "\n";
  }
  return failures ? kExitFailed : kExitOk;
}

int cmd_transport(const Options& o, std::ostream& out, std::ostream& err) {
  const ExampleSpec spec = ExampleSpec::paper_default(o.dim);
  const int n = spec.n();
  if (o.v < 1 || o.v > n || o.z < 1 || o.z > n)
    throw Error(ErrorCode::DimensionMismatch, "--v and --z are basis indices in 1.." + std::to_string(n));
  const TransportReport r = transport_check(spec, VectorXd::Unit(n, o.v - 1), o.z - 1, o.t, o.tol);
  out << transport_to_json(r, o.dim, o.v, o.z);
  const bool ok = r.max_relative_error < 1e-6 && r.max_second_derivative < 1e-5;
  if (!ok) err << "transport check exceeded its tolerances\n";
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature nullity analysis of left-invariant metrics on Lie groups", "nullitylab"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::uint64_t seed = 0;
  app.add_option("--tol,--tol-alg", o.tol.alg, "relative rank threshold")->check(CLI::PositiveNumber);
  app.add_option("--tol-sub", o.tol.sub, "subspace inclusion threshold")->check(CLI::PositiveNumber);
  app.add_option("--tol-pd", o.tol.pd, "metric positive-definiteness margin")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "certification seed (overrides NULLITYLAB_SEED)");
  app.add_option("--rounds", o.rounds, "randomised certification rounds")->check(CLI::NonNegativeNumber);

  auto* validate_cmd = app.add_subcommand("validate", "check the algebra invariants");
  validate_cmd->add_option("file", o.file)->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "full analysis report");
  analyze_cmd->add_option("file", o.file)->required();
  analyze_cmd->add_option("--json", o.json_out, "write the report here instead of stdout");

  auto* example_cmd = app.add_subcommand("example", "emit an algebra of the solvable example family");
  example_cmd->add_option("--dim", o.dim, "d (the algebra has dimension d + 1)")->required();
  example_cmd->add_option("--emit", o.emit, "output file (stdout by default)");
  example_cmd->add_option("--matrix", o.matrix, "custom d x d action matrix (CSV)");

  auto* certify_cmd = app.add_subcommand("certify", "certify the example family at one dimension");
  certify_cmd->add_option("--dim", o.dim)->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "reports and certificates for a range of dimensions");
  sweep_cmd->add_option("--dims", o.dims, "LO..HI")->required();
  sweep_cmd->add_option("--out", o.out_dir, "output directory")->required();

  auto* transport_cmd = app.add_subcommand("transport", "Killing field growth along a nullity geodesic");
  transport_cmd->add_option("--dim", o.dim)->required();
  transport_cmd->add_option("--v", o.v, "nullity direction (1-based basis index)")->required();
  transport_cmd->add_option("--z", o.z, "Killing field (1-based basis index)")->required();
  transport_cmd->add_option("--t", o.t, "sample times")->delimiter(',')->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  if (seed_opt->count()) o.seed = seed;

  try {
    if (*validate_cmd) return cmd_validate(o, out, err);
    if (*analyze_cmd) return cmd_analyze(o, out, err);
    if (*example_cmd) return cmd_example(o, out, err);
    if (*certify_cmd) return cmd_certify(o, out, err);
    if (*sweep_cmd) return cmd_sweep(o, out, err);
    if (*transport_cmd) return cmd_transport(o, out, err);
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    err << e.what() << "\n";
    if (code == kExitUsage) err << "run 'nullitylab --help' for usage\n";
    return code;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "file error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run_cli(args, out, err);
}

}  // namespace nullitylab
