#pragma once

#include <filesystem>
#include <string>

#include "nullitylab/algebra.hpp"

namespace nullitylab {

// Algebra files are TOML:
//
//   dim = 3
//   basis = ["X1", "X2", "X3"]
//   [[brackets]]          # only i < j, 1-based; missing pairs commute
//   i = 1
//   j = 2
//   coeffs = [0.0, 0.0, 1.0]
//   metric = [[1.0, 0.0, 0.0], ...]   # optional, identity by default

/// Throws ParseError with the offending key or line.
MetricLieAlgebra parse_algebra(const std::string& text);

/// Round-trips through parse_algebra; numbers use shortest exact notation.
std::string format_algebra(const MetricLieAlgebra& alg);

std::string read_text_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Comma or whitespace separated rows of numbers; blank lines and lines
/// starting with '#' are skipped.
MatrixXd parse_matrix_csv(const std::string& text);

/// Lower-case hex SHA-256.
std::string sha256_hex(const std::string& bytes);

}  // namespace nullitylab
