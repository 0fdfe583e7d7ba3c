#include "nullitylab/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <system_error>

#define TOML_HEADER_ONLY 1
#include <toml.hpp>

namespace nullitylab {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

double number(const toml::node& node, const std::string& where) {
  if (auto v = node.value<double>()) return *v;
  fail(where + ": expected a number");
}

std::vector<double> numbers(const toml::node* node, const std::string& where) {
  const toml::array* arr = node ? node->as_array() : nullptr;
  if (!arr) fail(where + ": expected an array of numbers");
  std::vector<double> out;
  for (size_t k = 0; k < arr->size(); ++k) out.push_back(number(*arr->get(k), where + "[" + std::to_string(k) + "]"));
  return out;
}

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".ein") == std::string::npos) s += ".0";
  return s;
}

std::string format_row(const VectorXd& v) {
  std::string s = "[";
  for (Eigen::Index k = 0; k < v.size(); ++k) s += (k ? ", " : "") + format_double(v(k));
  return s + "]";
}

std::string quoted(const std::string& s) {
  std::ostringstream out;
  out << std::quoted(s);
  return out.str();
}

}  // namespace

MetricLieAlgebra parse_algebra(const std::string& text) {
  toml::table doc;
  try {
    doc = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML syntax error at line " << e.source().begin.line << ": " << e.description();
    fail(msg.str());
  }

  const auto dim = doc["dim"].value<std::int64_t>();
  if (!dim || *dim < 1) fail("'dim' must be a positive integer");
  const auto n = static_cast<int>(*dim);

  std::vector<std::string> labels;
  if (const toml::array* b = doc["basis"].as_array()) {
    for (size_t k = 0; k < b->size(); ++k) {
      auto s = b->get(k)->value<std::string>();
      if (!s) fail("basis[" + std::to_string(k) + "]: expected a string");
      labels.push_back(*s);
    }
    if (static_cast<int>(labels.size()) != n) fail("'basis' must have dim entries");
  } else if (doc.contains("basis")) {
    fail("'basis' must be an array of strings");
  } else {
    for (int k = 1; k <= n; ++k) labels.push_back("X" + std::to_string(k));
  }

  std::vector<MetricLieAlgebra::UpperBracket> brackets;
  std::set<std::pair<int, int>> seen;
  if (doc.contains("brackets")) {
    const toml::array* arr = doc["brackets"].as_array();
    if (!arr) fail("'brackets' must be an array of tables");
    for (size_t k = 0; k < arr->size(); ++k) {
      const std::string where = "brackets[" + std::to_string(k) + "]";
      const toml::table* rec = arr->get(k)->as_table();
      if (!rec) fail(where + ": expected a table");
      const auto i = (*rec)["i"].value<std::int64_t>();
      const auto j = (*rec)["j"].value<std::int64_t>();
      if (!i || !j) fail(where + ": 'i' and 'j' must be integers");
      if (*i < 1 || *j > n || *i >= *j) fail(where + ": need 1 <= i < j <= dim");
      if (!seen.emplace(*i, *j).second) fail(where + ": duplicate pair");
      const std::vector<double> c = numbers(rec->get("coeffs"), where + ".coeffs");
      if (static_cast<int>(c.size()) != n) fail(where + ".coeffs: expected dim entries");
      brackets.push_back({static_cast<int>(*i) - 1, static_cast<int>(*j) - 1,
                          Eigen::Map<const VectorXd>(c.data(), n)});
    }
  }

  std::optional<MatrixXd> metric;
  if (doc.contains("metric")) {
    const toml::array* rows = doc["metric"].as_array();
    if (!rows || static_cast<int>(rows->size()) != n) fail("'metric' must have dim rows");
    MatrixXd g(n, n);
    for (int r = 0; r < n; ++r) {
      const std::vector<double> row = numbers(rows->get(static_cast<size_t>(r)), "metric[" + std::to_string(r) + "]");
      if (static_cast<int>(row.size()) != n) fail("metric[" + std::to_string(r) + "]: expected dim entries");
      for (int c = 0; c < n; ++c) g(r, c) = row[static_cast<size_t>(c)];
    }
    metric = std::move(g);
  }
  return MetricLieAlgebra::from_upper(std::move(labels), brackets, std::move(metric));
}

std::string format_algebra(const MetricLieAlgebra& alg) {
  const int n = alg.dim();
  std::ostringstream out;
  out << "dim = " << n << "\n";
  out << "basis = [";
  for (int k = 0; k < n; ++k) out << (k ? ", " : "") << quoted(alg.labels()[static_cast<size_t>(k)]);
  out << "]\n";
  out << "metric = [\n";
  for (int r = 0; r < n; ++r) out << "  " << format_row(alg.metric().row(r).transpose()) << ",\n";
  out << "]\n";
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const VectorXd& c = alg.bracket(i, j);
      if (c.cwiseAbs().maxCoeff() == 0.0) continue;
      out << "\n[[brackets]]\ni = " << i + 1 << "\nj = " << j + 1 << "\ncoeffs = " << format_row(c) << "\n";
    }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + tmp.string());
    out << content;
    out.close();
    if (!out) throw Error(ErrorCode::ParseError, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

MatrixXd parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    for (char& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t' || ch == '\r') ch = ' ';
    const auto first = line.find_first_not_of(' ');
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string tok;
    while (fields >> tok) {
      double x = 0.0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        fail("matrix line " + std::to_string(lineno) + ": '" + tok + "' is not a number");
      row.push_back(x);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      fail("matrix line " + std::to_string(lineno) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail("matrix file is empty");
  MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
  return m;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::PreconditionFailed, "SHA-256 digest failed");
  std::ostringstream out;
  for (unsigned int k = 0; k < len; ++k) out << std::hex << std::setw(2) << std::setfill('0') << int(md[k]);
  return out.str();
}

}  // namespace nullitylab
