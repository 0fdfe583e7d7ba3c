#include <gtest/gtest.h>

#include <filesystem>

#include "nullitylab/io.hpp"
#include "nullitylab/report.hpp"
#include "support.hpp"

namespace nullitylab {
namespace {

ErrorCode parse_code(const std::string& text) {
  try {
    parse_algebra(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed:\n" << text;
  return ErrorCode::Inconclusive;
}

TEST(Toml, ParsesHeisenberg) {
  const MetricLieAlgebra alg = parse_algebra(R"(
dim = 3
basis = ["X", "Y", "Z"]
[[brackets]]
i = 1
j = 2
coeffs = [0, 0, 1.0]
)");
  EXPECT_EQ(alg.dim(), 3);
  EXPECT_EQ(alg.labels(), (std::vector<std::string>{"X", "Y", "Z"}));
  EXPECT_EQ(alg.bracket(0, 1), VectorXd::Unit(3, 2));
  EXPECT_EQ(alg.bracket(1, 0), -VectorXd::Unit(3, 2));
  EXPECT_EQ(alg.bracket(1, 2).norm(), 0.0);
  EXPECT_EQ(alg.metric(), MatrixXd::Identity(3, 3));
}

TEST(Toml, DefaultsAndMetric) {
  const MetricLieAlgebra alg = parse_algebra("dim = 2\nmetric = [[2.0, 1.0], [1.0, 3.0]]\n");
  EXPECT_EQ(alg.labels(), (std::vector<std::string>{"X1", "X2"}));
  EXPECT_EQ(alg.metric()(0, 1), 1.0);
  EXPECT_EQ(alg.metric()(1, 1), 3.0);
}

TEST(Toml, Errors) {
  EXPECT_EQ(parse_code("dim = "), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("basis = [\"a\"]"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("dim = 0"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("dim = 2\nbasis = [\"a\"]"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("dim = 2\n[[brackets]]\ni = 2\nj = 1\ncoeffs = [1, 0]"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("dim = 2\n[[brackets]]\ni = 1\nj = 3\ncoeffs = [1, 0]"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("dim = 2\n[[brackets]]\ni = 1\nj = 2\ncoeffs = [1]"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("dim = 2\n[[brackets]]\ni = 1\nj = 2\ncoeffs = [1, \"x\"]"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("dim = 3\n[[brackets]]\ni = 1\nj = 2\ncoeffs = [0, 0, 1]\n"
                       "[[brackets]]\ni = 1\nj = 2\ncoeffs = [0, 0, 1]"),
            ErrorCode::ParseError);
  EXPECT_EQ(parse_code("dim = 2\nmetric = [[1, 0]]"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("dim = 2\nmetric = [[1, 0], [0]]"), ErrorCode::ParseError);
}

TEST(Toml, RoundTripIsExact) {
  std::mt19937_64 rng(9);
  auto entries = testing::corpus();
  entries.push_back({"moved", entries[2].alg.change_basis(testing::random_matrix(6, 6, rng))});
  for (const auto& [name, alg] : entries) {
    const std::string text = format_algebra(alg);
    const MetricLieAlgebra back = parse_algebra(text);
    ASSERT_EQ(back.dim(), alg.dim()) << name;
    EXPECT_EQ(back.labels(), alg.labels()) << name;
    EXPECT_EQ(back.metric(), alg.metric()) << name;
    for (int i = 0; i < alg.dim(); ++i)
      for (int j = 0; j < alg.dim(); ++j) EXPECT_EQ(back.bracket(i, j), alg.bracket(i, j)) << name;
    EXPECT_EQ(format_algebra(back), text) << name;
    EXPECT_EQ(text.find("-0.0,"), std::string::npos) << name;
  }
}

TEST(Csv, Separators) {
  const MatrixXd m = parse_matrix_csv("# header\n1, 2 ,3\n\n4;5;6\n7 8 9\n");
  MatrixXd expected(3, 3);
  expected << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  EXPECT_EQ(m, expected);
  EXPECT_EQ(parse_matrix_csv("-1.5e-3\n").value(), -1.5e-3);
}

TEST(Csv, Errors) {
  EXPECT_THROW(parse_matrix_csv("1, 2\n3\n"), Error);
  EXPECT_THROW(parse_matrix_csv("1, x\n"), Error);
  EXPECT_THROW(parse_matrix_csv("# nothing\n"), Error);
}

TEST(Digest, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Files, AtomicWriteAndRead) {
  const auto dir = std::filesystem::temp_directory_path() / "nullitylab_io_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.json";
  write_file_atomic(path, "first\n");
  write_file_atomic(path, "second\n");
  EXPECT_EQ(read_text_file(path), "second\n");
  size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1u);
  EXPECT_THROW(read_text_file(dir / "missing.toml"), Error);
  std::filesystem::remove_all(dir);
}

TEST(Report, RoundTripOverCorpus) {
  for (const auto& [name, alg] : testing::corpus()) {
    const AnalysisReport r = analyze(alg, sha256_hex(format_algebra(alg)));
    const std::string text = report_to_json(r);
    const AnalysisReport back = report_from_json(text);
    EXPECT_TRUE(back == r) << name;
    EXPECT_EQ(report_to_json(back), text) << name;
    EXPECT_EQ(text.back(), '\n');
  }
}

TEST(Report, IsDeterministic) {
  const MetricLieAlgebra alg = build_example(ExampleSpec::paper_default(6));
  EXPECT_EQ(report_to_json(analyze(alg, "x")), report_to_json(analyze(alg, "x")));
}

TEST(Report, ExampleContents) {
  const AnalysisReport r = analyze(build_example(ExampleSpec::paper_default(5)), "digest");
  ASSERT_TRUE(r.chain && r.ricci && r.symmetry && r.holonomy && r.structure);
  EXPECT_EQ(r.dim, 6);
  EXPECT_EQ(r.chain->dim_nullity, 3);
  EXPECT_EQ(r.chain->conullity, 3);
  EXPECT_EQ(r.symmetry->co_index, 2);
  EXPECT_TRUE(r.symmetry->relative);
  EXPECT_EQ(r.holonomy->verdict, "irreducible");
  EXPECT_EQ(r.holonomy->closure_dim, 15);
  EXPECT_EQ(r.holonomy->seeds_run, 20);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_TRUE(r.witnesses[0].passed);
  EXPECT_TRUE(std::is_sorted(r.ricci->eigenvalues.begin(), r.ricci->eigenvalues.end()));
  EXPECT_EQ(r.seed, kDefaultSeed);
  EXPECT_EQ(r.tool_version, version());
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Report, InvalidAlgebraHasNoSections) {
  MatrixXd g = MatrixXd::Identity(2, 2);
  g(1, 1) = -1.0;
  const AnalysisReport r = analyze(MetricLieAlgebra::from_upper({"a", "b"}, {}, g), "d");
  EXPECT_FALSE(r.validation.valid());
  EXPECT_FALSE(r.structure || r.chain || r.ricci || r.symmetry || r.holonomy);
  const std::string text = report_to_json(r);
  EXPECT_NE(text.find("\"chain\": null"), std::string::npos);
  EXPECT_TRUE(report_from_json(text) == r);
}

TEST(Report, MalformedJson) {
  auto code = [](const std::string& text) {
    try {
      report_from_json(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Inconclusive;
  };
  EXPECT_EQ(code("{"), ErrorCode::ParseError);
  EXPECT_EQ(code("[]"), ErrorCode::ParseError);
  EXPECT_EQ(code("{\"dim\": 3}"), ErrorCode::ParseError);
  std::string text = report_to_json(analyze(testing::heisenberg3(), "h"));
  text.replace(text.find("\"dim\""), 5, "\"dom\"");
  EXPECT_EQ(code(text), ErrorCode::ParseError);
}

TEST(Report, CertificateJson) {
  const Section8Certificate c = verify_section8(ExampleSpec::paper_default(4));
  const std::string text = certificate_to_json(c, Tolerances{}, kDefaultSeed);
  EXPECT_NE(text.find("\"passed\": true"), std::string::npos);
  EXPECT_NE(text.find("\"first_failure\": null"), std::string::npos);
  EXPECT_EQ(text, certificate_to_json(verify_section8(ExampleSpec::paper_default(4)), Tolerances{}, kDefaultSeed));
}

}  // namespace
}  // namespace nullitylab
