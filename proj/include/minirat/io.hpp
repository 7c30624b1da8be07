#ifndef MINIRAT_IO_HPP
#define MINIRAT_IO_HPP

#include <Eigen/Dense>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualcore.hpp"
#include "orthobasis.hpp"
#include "problems.hpp"
#include "solvers.hpp"

namespace minirat::io {

/// Shortest text form that round-trips a double (17 significant digits).
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::uint64_t parse_hex64(const std::string& s) {
  return std::stoull(s, nullptr, 16);
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const KrylovBasis& basis) {
  nlohmann::json h = nlohmann::json::array();
  for (Eigen::Index i = 0; i < basis.H.rows(); ++i)
    for (Eigen::Index j = 0; j < basis.H.cols(); ++j)
      h.push_back({basis.H(i, j).real(), basis.H(i, j).imag()});
  return {{"rank", basis.rank}, {"seed_norm", basis.seed_norm}, {"H", std::move(h)}};
}

inline KrylovBasis basis_from_json(const nlohmann::json& j) {
  KrylovBasis basis;
  basis.rank = j.at("rank").get<Eigen::Index>();
  basis.seed_norm = j.at("seed_norm").get<double>();
  if (basis.rank < 1 || !(basis.seed_norm > 0.0))
    throw std::invalid_argument("basis: rank must be >= 1 and seed_norm positive");
  const auto& h = j.at("H");
  const Eigen::Index rows = basis.rank, cols = basis.rank - 1;
  if (static_cast<Eigen::Index>(h.size()) != rows * cols)
    throw std::invalid_argument("basis: H entry count does not match rank");
  basis.H.resize(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++k)
      basis.H(i, j2) = {h[k][0].get<double>(), h[k][1].get<double>()};
  return basis;
}

inline nlohmann::json complex_vector_to_json(const Eigen::VectorXcd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) out.push_back({v[j].real(), v[j].imag()});
  return out;
}

inline Eigen::VectorXcd complex_vector_from_json(const nlohmann::json& j) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = {j[k][0].get<double>(), j[k][1].get<double>()};
  return v;
}

inline nlohmann::json to_json(const Approximant& a) {
  return {{"format", "minirat-approximant-v1"},
          {"n1", a.n1},
          {"n2", a.n2},
          {"recurrence_p", to_json(a.recurrence_p)},
          {"recurrence_q", to_json(a.recurrence_q)},
          {"hat_a", complex_vector_to_json(a.hat_a)},
          {"hat_b", complex_vector_to_json(a.hat_b)},
          {"source_nodes_digest", fmt_hex64(a.source_nodes_digest)}};
}

inline Approximant approximant_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "minirat-approximant-v1")
    throw std::invalid_argument("approximant: unrecognized format tag");
  Approximant a;
  a.n1 = j.at("n1").get<Eigen::Index>();
  a.n2 = j.at("n2").get<Eigen::Index>();
  a.recurrence_p = basis_from_json(j.at("recurrence_p"));
  a.recurrence_q = basis_from_json(j.at("recurrence_q"));
  a.hat_a = complex_vector_from_json(j.at("hat_a"));
  a.hat_b = complex_vector_from_json(j.at("hat_b"));
  a.source_nodes_digest = parse_hex64(j.at("source_nodes_digest").get<std::string>());
  return a;
}

inline nlohmann::json to_json(const Certificate& cert) {
  return {{"gap", cert.gap},
          {"sqrt_d2", cert.sqrt_d2},
          {"max_err", cert.max_err},
          {"lambda_min", cert.lambda_min},
          {"satisfied", cert.satisfied},
          {"interpolation_regime", cert.interpolation_regime},
          {"multiple_minimum", cert.multiple_minimum},
          {"support", cert.support}};
}

// ---------------------------------------------------------------------------
// CSV

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string trace_csv(const SolveTrace& trace) {
  std::string s = "iter,sqrt_d2,max_err,gap,active_nodes\n";
  for (const auto& row : trace.rows) {
    s += std::to_string(row.k) + ',' + fmt(row.sqrt_d2) + ',' + fmt(row.max_err) + ',' +
         fmt(row.gap) + ',' + std::to_string(row.active_nodes) + '\n';
  }
  return s;
}

inline std::string curve_csv(const SampleSet& samples, const Eigen::VectorXcd& xi) {
  std::string s = "x_re,x_im,f_re,f_im,xi_re,xi_im,abs_err\n";
  for (Eigen::Index j = 0; j < samples.size(); ++j) {
    s += fmt(samples.x[j].real()) + ',' + fmt(samples.x[j].imag()) + ',' +
         fmt(samples.f[j].real()) + ',' + fmt(samples.f[j].imag()) + ',' + fmt(xi[j].real()) +
         ',' + fmt(xi[j].imag()) + ',' + fmt(std::abs(samples.f[j] - xi[j])) + '\n';
  }
  return s;
}

inline std::string eval_csv(const Eigen::VectorXcd& y, const Eigen::VectorXcd& xi) {
  std::string s = "y_re,y_im,xi_re,xi_im\n";
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    s += fmt(y[j].real()) + ',' + fmt(y[j].imag()) + ',' + fmt(xi[j].real()) + ',' +
         fmt(xi[j].imag()) + '\n';
  }
  return s;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

inline bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

/// Numeric rows of a CSV file with at least min_cols columns; an initial
/// non-numeric row is treated as the header and skipped.
inline std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                         std::size_t min_cols) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    std::vector<double> row;
    bool ok = fields.size() >= min_cols;
    for (const auto& f : fields) {
      double v;
      if (!parse_double(f, v)) {
        ok = false;
        break;
      }
      row.push_back(v);
    }
    if (!ok) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw std::runtime_error(path + ": malformed row at line " + std::to_string(lineno));
    }
    first = false;
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no data rows");
  return rows;
}

}  // namespace detail

/// Columns x_re,x_im,f_re,f_im. Duplicate nodes are rejected with their indices.
inline SampleSet read_samples_csv(const std::string& path) {
  auto rows = detail::read_numeric_csv(path, 4);
  Eigen::VectorXcd x(static_cast<Eigen::Index>(rows.size())), f(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    x[static_cast<Eigen::Index>(k)] = {rows[k][0], rows[k][1]};
    f[static_cast<Eigen::Index>(k)] = {rows[k][2], rows[k][3]};
  }
  return SampleSet(std::move(x), std::move(f));
}

/// Columns y_re,y_im (extra columns ignored).
inline Eigen::VectorXcd read_nodes_csv(const std::string& path) {
  auto rows = detail::read_numeric_csv(path, 2);
  Eigen::VectorXcd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k)
    y[static_cast<Eigen::Index>(k)] = {rows[k][0], rows[k][1]};
  return y;
}

/// Single column of nonnegative weights; must already sum to 1 within 1e-8.
inline Eigen::VectorXd read_weights_csv(const std::string& path) {
  auto rows = detail::read_numeric_csv(path, 1);
  Eigen::VectorXd w(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) w[static_cast<Eigen::Index>(k)] = rows[k][0];
  if (w.minCoeff() < 0.0) throw std::runtime_error(path + ": negative weight");
  if (std::abs(w.sum() - 1.0) > 1e-8)
    throw std::runtime_error(path + ": weights must sum to 1 (got " + fmt(w.sum()) + ")");
  return w;
}

}  // namespace minirat::io

#endif  // MINIRAT_IO_HPP
