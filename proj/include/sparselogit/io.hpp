#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sparselogit/matrix.hpp"

namespace sparselogit {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FileFormat { csv, svmlight, auto_detect };

namespace detail {

inline std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

inline bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

inline double parse_label(const std::string& tok, Index lineno) {
  char* end = nullptr;
  const double val = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw ParseError("line " + std::to_string(lineno) + ": bad label '" + tok + "'");
  if (val == 0.0 || val == 1.0) return val;
  if (val == -1.0) return 0.0;  // {-1,+1} corpora remapped to {0,1}
  throw DataError("line " + std::to_string(lineno) + ": non-binary label '" + tok + "'");
}

}  // namespace detail

/// Parses svmlight-style text: `<label> (<index>:<value>)*`, 1-based
/// indices, `#` comments. Produces a CSR matrix with n = max index seen.
inline Dataset parse_svmlight(std::istream& in) {
  std::vector<Index> offsets{0};
  std::vector<Index> indices;
  Vector values, y;
  Index n = 0, lineno = 0;

  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = detail::strip_comment(line);
    if (detail::blank(body)) continue;
    std::istringstream ls(body);
    std::string tok;
    ls >> tok;
    y.push_back(detail::parse_label(tok, lineno));

    std::vector<std::pair<Index, double>> row;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw ParseError("line " + std::to_string(lineno) + ": expected index:value, got '" + tok + "'");
      char* end = nullptr;
      const long idx = std::strtol(tok.c_str(), &end, 10);
      if (end != tok.c_str() + colon || idx < 1)
        throw ParseError("line " + std::to_string(lineno) + ": bad feature index in '" + tok + "'");
      const std::string vstr = tok.substr(colon + 1);
      const double val = std::strtod(vstr.c_str(), &end);
      if (end == vstr.c_str() || *end != '\0' || !std::isfinite(val))
        throw ParseError("line " + std::to_string(lineno) + ": bad feature value in '" + tok + "'");
      row.emplace_back(static_cast<Index>(idx - 1), val);  // to 0-based
    }
    std::sort(row.begin(), row.end());
    for (Index i = 1; i < row.size(); ++i)
      if (row[i].first == row[i - 1].first)
        throw ParseError("line " + std::to_string(lineno) + ": duplicate feature index " +
                         std::to_string(row[i].first + 1));
    for (const auto& [idx, val] : row) {
      indices.push_back(idx);
      values.push_back(val);
      n = std::max(n, idx + 1);
    }
    offsets.push_back(values.size());
  }
  if (y.empty()) throw DataError("empty svmlight input");
  if (n == 0) n = 1;  // all rows empty; keep the matrix well formed
  const Index m = y.size();
  return Dataset(DesignMatrix::csr(m, n, std::move(offsets), std::move(indices),
                                   std::move(values)),
                 std::move(y));
}

/// Parses dense CSV: one sample per line, last column is the binary label.
inline Dataset parse_csv(std::istream& in) {
  Vector values, y;
  Index n = 0, m = 0, lineno = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = detail::strip_comment(line);
    if (detail::blank(body)) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(body);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() < 2)
      throw ParseError("line " + std::to_string(lineno) + ": need at least one feature and a label");
    if (m == 0) {
      n = fields.size() - 1;
    } else if (fields.size() - 1 != n) {
      throw ParseError("line " + std::to_string(lineno) + ": inconsistent column count");
    }
    for (Index j = 0; j < n; ++j) {
      char* end = nullptr;
      const double v = std::strtod(fields[j].c_str(), &end);
      if (end == fields[j].c_str() || !std::isfinite(v))
        throw ParseError("line " + std::to_string(lineno) + ": bad value '" + fields[j] + "'");
      values.push_back(v);
    }
    y.push_back(detail::parse_label(fields[n], lineno));
    ++m;
  }
  if (m == 0) throw DataError("empty csv input");
  return Dataset(DesignMatrix::dense(m, n, std::move(values)), std::move(y));
}

inline Dataset load_dataset_stream(std::istream& in, FileFormat fmt) {
  if (fmt == FileFormat::auto_detect) {
    // sniff: an index:value token on the first data line means svmlight
    std::string buffered((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
    std::istringstream sniff(buffered);
    std::string line;
    FileFormat detected = FileFormat::csv;
    while (std::getline(sniff, line)) {
      const std::string body = detail::strip_comment(line);
      if (detail::blank(body)) continue;
      detected = body.find(':') != std::string::npos ? FileFormat::svmlight
                                                     : FileFormat::csv;
      break;
    }
    std::istringstream replay(buffered);
    return load_dataset_stream(replay, detected);
  }
  return fmt == FileFormat::svmlight ? parse_svmlight(in) : parse_csv(in);
}

inline Dataset load_dataset(const std::string& path,
                            FileFormat fmt = FileFormat::auto_detect) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return load_dataset_stream(in, fmt);
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_svmlight(std::ostream& out, const Dataset& data) {
  for (Index i = 0; i < data.m(); ++i) {
    out << static_cast<int>(data.y[i]);
    for (Index j = 0; j < data.n(); ++j) {
      const double v = data.design.at(i, j);
      if (v != 0.0) out << ' ' << (j + 1) << ':' << format_double(v);
    }
    out << '\n';
  }
}

}  // namespace sparselogit
