// SPDX-License-Identifier: Apache-2.0

/// \file
/// Bicriteria ATSP instances: the weight matrices, the random instance
/// series generators, TSPLIB FULL_MATRIX ingestion and the BIATSP text
/// file format.

#ifndef BIATSP_INSTANCE_HPP
#define BIATSP_INSTANCE_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biatsp/error.hpp"
#include "biatsp/rng.hpp"

namespace biatsp {

using Vertex = int;
using Weight = std::int64_t;

/// Dense square matrix of arc weights, row-major. Diagonal entries are kept
/// as 0 and never read by evaluation code.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n, Weight fill = 0) : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {
    for (int v = 0; v < n_; ++v) (*this)(v, v) = 0;
  }

  int size() const noexcept { return n_; }

  Weight& operator()(Vertex from, Vertex to) noexcept { return data_[static_cast<std::size_t>(from) * n_ + to]; }
  Weight operator()(Vertex from, Vertex to) const noexcept {
    return data_[static_cast<std::size_t>(from) * n_ + to];
  }

  const std::vector<Weight>& data() const noexcept { return data_; }

  Weight max_off_diagonal() const noexcept {
    Weight m = 0;
    for (int u = 0; u < n_; ++u)
      for (int v = 0; v < n_; ++v)
        if (u != v) m = std::max(m, (*this)(u, v));
    return m;
  }
  Weight min_off_diagonal() const noexcept {
    Weight m = 0;
    bool first = true;
    for (int u = 0; u < n_; ++u)
      for (int v = 0; v < n_; ++v)
        if (u != v && (first || (*this)(u, v) < m)) {
          m = (*this)(u, v);
          first = false;
        }
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int n_ = 0;
  std::vector<Weight> data_;
};

struct BiInstance {
  std::string name;
  int n = 0;
  Matrix w1;
  Matrix w2;
  /// Free-form metadata lines (generator kind, intervals, seed).
  std::vector<std::string> comments;

  const Matrix& weights(int criterion) const noexcept { return criterion == 1 ? w1 : w2; }

  friend bool operator==(const BiInstance&, const BiInstance&) = default;
};

/// Throws FormatError unless n >= 3, both matrices are n x n and every
/// off-diagonal weight is >= 1.
inline void validate(const BiInstance& inst) {
  if (inst.n < 3) throw FormatError("instance '" + inst.name + "': dimension must be at least 3");
  if (inst.w1.size() != inst.n || inst.w2.size() != inst.n)
    throw FormatError("instance '" + inst.name + "': matrix dimension mismatch");
  for (int c = 1; c <= 2; ++c) {
    const Matrix& w = inst.weights(c);
    for (int u = 0; u < inst.n; ++u)
      for (int v = 0; v < inst.n; ++v)
        if (u != v && w(u, v) < 1)
          throw FormatError("instance '" + inst.name + "': weight " + std::to_string(c) + "[" +
                            std::to_string(u) + "][" + std::to_string(v) + "] = " +
                            std::to_string(w(u, v)) + " is not a positive integer");
  }
}

struct Interval {
  Weight lo = 1;
  Weight hi = 1;

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class GeneratorKind { uniform, contradicting, tsplib_derived };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::uniform;
  int n = 50;
  Interval interval1{1, 10};
  Interval interval2{1, 10};
  /// Used by the contradicting kind only: w2 = contradiction_sum - w1.
  Weight contradiction_sum = 3;
  std::uint64_t seed = 1;
};

namespace detail {

inline std::string interval_str(Interval iv) {
  return "[" + std::to_string(iv.lo) + "," + std::to_string(iv.hi) + "]";
}

inline void check_interval(Interval iv, const char* what) {
  if (iv.lo < 1 || iv.lo > iv.hi)
    throw ConfigError(std::string(what) + " " + interval_str(iv) + " must satisfy 1 <= lo <= hi");
}

inline void check_dimension(int n) {
  if (n < 3) throw ConfigError("vertex count must be at least 3, got " + std::to_string(n));
}

inline Matrix random_matrix(int n, Interval iv, Rng& rng) {
  Matrix m(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) m(u, v) = rng.uniform(iv.lo, iv.hi);
  return m;
}

}  // namespace detail

/// Name used by the generators, e.g. "S50[1,10][1,20]" or "S50contr[1,2][1,2]".
inline std::string series_name(const GeneratorSpec& spec) {
  const std::string n = std::to_string(spec.n);
  if (spec.kind == GeneratorKind::contradicting) {
    const Interval second{spec.contradiction_sum - spec.interval1.hi, spec.contradiction_sum - spec.interval1.lo};
    return "S" + n + "contr" + detail::interval_str(spec.interval1) + detail::interval_str(second);
  }
  return "S" + n + detail::interval_str(spec.interval1) + detail::interval_str(spec.interval2);
}

inline BiInstance generate_uniform(const GeneratorSpec& spec) {
  if (spec.kind != GeneratorKind::uniform) throw ConfigError("generate_uniform: spec kind is not uniform");
  detail::check_dimension(spec.n);
  detail::check_interval(spec.interval1, "interval1");
  detail::check_interval(spec.interval2, "interval2");
  Rng rng(derive_seed(spec.seed, "instance"));
  BiInstance inst;
  inst.n = spec.n;
  inst.name = series_name(spec) + "_s" + std::to_string(spec.seed);
  inst.w1 = detail::random_matrix(spec.n, spec.interval1, rng);
  inst.w2 = detail::random_matrix(spec.n, spec.interval2, rng);
  inst.comments.push_back("generator=uniform n=" + std::to_string(spec.n) +
                          " interval1=" + detail::interval_str(spec.interval1) +
                          " interval2=" + detail::interval_str(spec.interval2) +
                          " seed=" + std::to_string(spec.seed));
  return inst;
}

/// Criteria contradicting with coefficient 1: w2 = sum - w1 arc by arc, so
/// every tour has D1 + D2 = n * sum.
inline BiInstance generate_contradicting(const GeneratorSpec& spec) {
  if (spec.kind != GeneratorKind::contradicting)
    throw ConfigError("generate_contradicting: spec kind is not contradicting");
  detail::check_dimension(spec.n);
  detail::check_interval(spec.interval1, "interval1");
  if (spec.contradiction_sum - spec.interval1.hi < 1)
    throw ConfigError("contradiction sum " + std::to_string(spec.contradiction_sum) +
                      " leaves a non-positive second weight for interval1 " +
                      detail::interval_str(spec.interval1));
  Rng rng(derive_seed(spec.seed, "instance"));
  BiInstance inst;
  inst.n = spec.n;
  inst.name = series_name(spec) + "_s" + std::to_string(spec.seed);
  inst.w1 = detail::random_matrix(spec.n, spec.interval1, rng);
  inst.w2 = Matrix(spec.n);
  for (int u = 0; u < spec.n; ++u)
    for (int v = 0; v < spec.n; ++v)
      if (u != v) inst.w2(u, v) = spec.contradiction_sum - inst.w1(u, v);
  inst.comments.push_back("generator=contradicting n=" + std::to_string(spec.n) +
                          " interval1=" + detail::interval_str(spec.interval1) +
                          " sum=" + std::to_string(spec.contradiction_sum) + " seed=" + std::to_string(spec.seed));
  return inst;
}

inline BiInstance generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::uniform:
      return generate_uniform(spec);
    case GeneratorKind::contradicting:
      return generate_contradicting(spec);
    case GeneratorKind::tsplib_derived:
      break;
  }
  throw ConfigError("tsplib_derived instances need a source matrix; use derive_second_criterion");
}

// ---------------------------------------------------------------------------
// TSPLIB

struct TsplibMatrix {
  std::string name;
  int n = 0;
  Matrix matrix;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::optional<Weight> to_weight(std::string_view tok) {
  if (tok.empty()) return std::nullopt;
  std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (i == tok.size()) return std::nullopt;
  for (std::size_t k = i; k < tok.size(); ++k)
    if (tok[k] < '0' || tok[k] > '9') return std::nullopt;
  try {
    return static_cast<Weight>(std::stoll(std::string(tok)));
  } catch (const std::out_of_range&) {
    return std::nullopt;
  }
}

/// Whitespace tokenizer that remembers line numbers.
class TokenStream {
 public:
  explicit TokenStream(std::istream& in) : in_(in) {}

  /// Next full line (for header parsing); false at end of input.
  bool next_line(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    return true;
  }

  /// Next whitespace-separated token; false at end of input.
  bool next_token(std::string& tok) {
    while (true) {
      while (pos_ < buffer_.size() && std::isspace(static_cast<unsigned char>(buffer_[pos_]))) ++pos_;
      if (pos_ < buffer_.size()) {
        const auto start = pos_;
        while (pos_ < buffer_.size() && !std::isspace(static_cast<unsigned char>(buffer_[pos_]))) ++pos_;
        tok = buffer_.substr(start, pos_ - start);
        token_line_ = line_no_;
        return true;
      }
      if (!std::getline(in_, buffer_)) return false;
      ++line_no_;
      pos_ = 0;
    }
  }

  int line() const noexcept { return line_no_; }
  int token_line() const noexcept { return token_line_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
  int token_line_ = 0;
};

inline std::pair<std::string, std::string> split_keyword(const std::string& line) {
  const auto colon = line.find(':');
  if (colon == std::string::npos) return {trim(line), {}};
  return {trim(line.substr(0, colon)), trim(line.substr(colon + 1))};
}

inline std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

/// Reads n*n integers that follow a section keyword. Stops at the first
/// non-integer token, which is returned through `terminator`.
template <typename Error>
Matrix read_matrix_section(TokenStream& ts, int n, const std::string& section, std::string& terminator,
                           bool allow_negative) {
  std::vector<Weight> values;
  values.reserve(static_cast<std::size_t>(n) * n);
  std::string tok;
  terminator.clear();
  while (ts.next_token(tok)) {
    auto w = to_weight(tok);
    if (!w) {
      const bool keyword = std::isalpha(static_cast<unsigned char>(tok[0])) != 0;
      if (keyword) {
        terminator = tok;
        break;
      }
      throw Error(section + ": line " + std::to_string(ts.token_line()) + ": non-integer edge weight '" +
                  tok + "'");
    }
    if (!allow_negative && *w < 0)
      throw Error(section + ": line " + std::to_string(ts.token_line()) + ": negative edge weight " + tok);
    values.push_back(*w);
  }
  const auto expected = static_cast<std::size_t>(n) * n;
  if (values.size() != expected)
    throw Error(section + ": expected " + std::to_string(expected) + " weights for DIMENSION " +
                std::to_string(n) + ", found " + std::to_string(values.size()) + " (line " +
                std::to_string(ts.line()) + ")");
  Matrix m(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) m(u, v) = values[static_cast<std::size_t>(u) * n + v];
  return m;
}

inline int parse_dimension(const std::string& value, int line) {
  auto d = to_weight(value);
  if (!d || *d < 2 || *d > 100000)
    throw ParseError("DIMENSION: line " + std::to_string(line) + ": invalid value '" + value + "'");
  return static_cast<int>(*d);
}

}  // namespace detail

/// Parses a TSPLIB ATSP file with EDGE_WEIGHT_TYPE EXPLICIT and
/// EDGE_WEIGHT_FORMAT FULL_MATRIX. The diagonal is discarded.
inline TsplibMatrix parse_tsplib_atsp(std::istream& in) {
  detail::TokenStream ts(in);
  TsplibMatrix out;
  std::optional<int> dim;
  std::string format;
  std::string line;
  bool in_section = false;
  while (ts.next_line(line)) {
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    auto [key, value] = detail::split_keyword(trimmed);
    key = detail::upper(key);
    if (key == "EOF") break;
    if (key == "NAME") {
      out.name = value;
    } else if (key == "TYPE") {
      if (detail::upper(value) != "ATSP")
        throw ParseError("TYPE: line " + std::to_string(ts.line()) + ": unsupported problem type '" + value + "'");
    } else if (key == "DIMENSION") {
      dim = detail::parse_dimension(value, ts.line());
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (detail::upper(value) != "EXPLICIT")
        throw ParseError("EDGE_WEIGHT_TYPE: line " + std::to_string(ts.line()) + ": unsupported type '" + value +
                         "'");
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      format = detail::upper(value);
      if (format != "FULL_MATRIX")
        throw ParseError("EDGE_WEIGHT_FORMAT: line " + std::to_string(ts.line()) + ": unsupported format '" +
                         value + "'");
    } else if (key == "EDGE_WEIGHT_SECTION") {
      in_section = true;
      break;
    }
  }
  if (!in_section) throw ParseError("EDGE_WEIGHT_SECTION: missing");
  if (!dim) throw ParseError("DIMENSION: missing before EDGE_WEIGHT_SECTION");
  if (format.empty()) throw ParseError("EDGE_WEIGHT_FORMAT: missing before EDGE_WEIGHT_SECTION");
  std::string terminator;
  out.n = *dim;
  out.matrix = detail::read_matrix_section<ParseError>(ts, out.n, "EDGE_WEIGHT_SECTION", terminator, true);
  return out;
}

inline TsplibMatrix parse_tsplib_atsp(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tsplib_atsp(in);
}

/// Builds an instance whose first criterion is `matrix1` and whose second
/// criterion is drawn uniformly from [1, max off-diagonal weight of matrix1].
inline BiInstance derive_second_criterion(const TsplibMatrix& source, std::uint64_t seed) {
  const int n = source.n;
  if (n < 3 || source.matrix.size() != n) throw ConfigError("derive_second_criterion: invalid source matrix");
  const Weight dmax = source.matrix.max_off_diagonal();
  Rng rng(derive_seed(seed, "instance"));
  BiInstance inst;
  inst.n = n;
  inst.name = (source.name.empty() ? std::string("atsp") : source.name) + "_rand_s" + std::to_string(seed);
  inst.w1 = source.matrix;
  inst.w2 = detail::random_matrix(n, Interval{1, std::max<Weight>(1, dmax)}, rng);
  inst.comments.push_back("generator=tsplib_derived source=" + source.name + " n=" + std::to_string(n) +
                          " interval2=[1," + std::to_string(dmax) + "] seed=" + std::to_string(seed));
  validate(inst);
  return inst;
}

// ---------------------------------------------------------------------------
// BIATSP file format

inline constexpr int kInstanceFormatVersion = 1;

inline void write_instance(std::ostream& os, const BiInstance& inst) {
  os << "NAME: " << inst.name << '\n';
  os << "TYPE: BIATSP\n";
  os << "VERSION: " << kInstanceFormatVersion << '\n';
  for (const auto& c : inst.comments) os << "COMMENT: " << c << '\n';
  os << "DIMENSION: " << inst.n << '\n';
  for (int c = 1; c <= 2; ++c) {
    os << "EDGE_WEIGHT_SECTION_" << c << '\n';
    const Matrix& w = inst.weights(c);
    for (int u = 0; u < inst.n; ++u) {
      for (int v = 0; v < inst.n; ++v) {
        if (v) os << ' ';
        os << (u == v ? 0 : w(u, v));
      }
      os << '\n';
    }
  }
  os << "EOF\n";
}

inline std::string to_string(const BiInstance& inst) {
  std::ostringstream os;
  write_instance(os, inst);
  return os.str();
}

inline BiInstance read_instance(std::istream& in) {
  detail::TokenStream ts(in);
  BiInstance inst;
  std::optional<int> dim;
  bool typed = false;
  bool in_section = false;
  std::string line;
  while (ts.next_line(line)) {
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    auto [key, value] = detail::split_keyword(trimmed);
    key = detail::upper(key);
    if (key == "NAME") {
      inst.name = value;
    } else if (key == "TYPE") {
      if (value != "BIATSP") throw FormatError("TYPE: expected BIATSP, found '" + value + "'");
      typed = true;
    } else if (key == "VERSION") {
      if (value != std::to_string(kInstanceFormatVersion))
        throw FormatError("VERSION: unsupported format version '" + value + "'");
    } else if (key == "COMMENT") {
      inst.comments.push_back(value);
    } else if (key == "DIMENSION") {
      auto d = detail::to_weight(value);
      if (!d || *d < 3 || *d > 100000) throw FormatError("DIMENSION: invalid value '" + value + "'");
      dim = static_cast<int>(*d);
    } else if (key == "EDGE_WEIGHT_SECTION_1") {
      in_section = true;
      break;
    } else {
      throw FormatError("line " + std::to_string(ts.line()) + ": unknown keyword '" + key + "'");
    }
  }
  if (!typed) throw FormatError("TYPE: missing");
  if (!dim) throw FormatError("DIMENSION: missing");
  if (!in_section) throw FormatError("EDGE_WEIGHT_SECTION_1: missing");
  inst.n = *dim;
  std::string terminator;
  inst.w1 = detail::read_matrix_section<FormatError>(ts, inst.n, "EDGE_WEIGHT_SECTION_1", terminator, false);
  if (terminator != "EDGE_WEIGHT_SECTION_2")
    throw FormatError("EDGE_WEIGHT_SECTION_2: expected after first matrix, found '" + terminator + "'");
  inst.w2 = detail::read_matrix_section<FormatError>(ts, inst.n, "EDGE_WEIGHT_SECTION_2", terminator, false);
  if (terminator != "EOF") throw FormatError("EOF: expected after second matrix, found '" + terminator + "'");
  validate(inst);
  return inst;
}

inline BiInstance instance_from_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_instance(in);
}

}  // namespace biatsp

#endif  // BIATSP_INSTANCE_HPP
