#pragma once

// Revealed comparative advantage: trade-flow ingestion, the Balassa index
// matrix B and its thresholded indicator S.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linbench/dense_matrix.hpp"
#include "linbench/errors.hpp"

namespace linbench {

struct TradeFlow {
  std::string country;
  std::string product;
  double value = 0.0;
};

/// Raw (country, product, value) records in input order. Duplicate pairs
/// are allowed here and summed by build_trade_matrix.
struct TradeFlowTable {
  std::vector<TradeFlow> records;
  std::string units = "USD";
};

/// X with labelled rows (countries) and columns (products).
struct TradeMatrix {
  DenseMatrix x;
  std::vector<std::string> countries;
  std::vector<std::string> products;
};

struct BalassaResult {
  DenseMatrix b;  // indices
  DenseMatrix s;  // 1 where b >= 1, else 0
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

inline bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

inline std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Reads `country,product,value` CSV. Blank lines are skipped. Line numbers
/// in errors are 1-based and count the header.
inline TradeFlowTable ingest_trade_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open trade file: " + path.string());

  TradeFlowTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = detail::trim(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (view.empty()) continue;
    const auto fields = detail::split_commas(view);
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "country" || fields[1] != "product" ||
          fields[2] != "value") {
        throw parse_error(line_no, "expected header 'country,product,value'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw parse_error(line_no, "expected 3 fields, found " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw parse_error(line_no, "empty country or product identifier");
    }
    double value = 0.0;
    if (!detail::parse_double(fields[2], value) || !std::isfinite(value)) {
      throw parse_error(line_no, "non-numeric value '" + std::string(fields[2]) + "'");
    }
    if (value < 0.0) {
      throw parse_error(line_no, "negative value " + std::string(fields[2]));
    }
    table.records.push_back({std::string(fields[0]), std::string(fields[1]), value});
  }
  if (!header_seen) throw parse_error(line_no == 0 ? 1 : line_no, "missing header");
  return table;
}

/// Countries and products in lexicographic order; duplicate pairs summed.
inline TradeMatrix build_trade_matrix(const TradeFlowTable& t) {
  if (t.records.empty()) throw invalid_argument("build_trade_matrix: no trade records");
  std::map<std::string, std::size_t> countries;
  std::map<std::string, std::size_t> products;
  for (const auto& r : t.records) {
    countries.emplace(r.country, 0);
    products.emplace(r.product, 0);
  }
  TradeMatrix m{DenseMatrix(countries.size(), products.size()), {}, {}};
  for (auto& [name, idx] : countries) {
    idx = m.countries.size();
    m.countries.push_back(name);
  }
  for (auto& [name, idx] : products) {
    idx = m.products.size();
    m.products.push_back(name);
  }
  for (const auto& r : t.records) m.x(countries[r.country], products[r.product]) += r.value;
  return m;
}

/// S(c,p) = 1 iff B(c,p) >= 1.
inline DenseMatrix threshold_indicator(const DenseMatrix& b) {
  DenseMatrix s(b.rows(), b.cols());
  auto src = b.data();
  auto dst = s.data();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k] >= 1.0 ? 1.0 : 0.0;
  return s;
}

/// Matrix pipeline: divide each row by its sum, then each column by its
/// share of the world total. Labels are only used in error messages and
/// may be empty.
inline BalassaResult balassa_indices(const DenseMatrix& x,
                                     const std::vector<std::string>& row_labels = {},
                                     const std::vector<std::string>& col_labels = {}) {
  const std::size_t c = x.rows();
  const std::size_t p = x.cols();
  auto name = [](const std::vector<std::string>& labels, std::size_t k, const char* kind) {
    return k < labels.size() ? labels[k] : std::string(kind) + " #" + std::to_string(k);
  };

  std::vector<double> row_sum(c, 0.0);
  std::vector<double> col_sum(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < c; ++i) {
      const double v = x(i, j);
      if (v < 0.0) throw invalid_argument("balassa: negative export value");
      row_sum[i] += v;
      col_sum[j] += v;
    }
  }
  for (std::size_t i = 0; i < c; ++i) {
    if (!(row_sum[i] > 0.0)) {
      throw degenerate_margin_error("balassa: country '" + name(row_labels, i, "country") +
                                    "' has zero total exports");
    }
  }
  double total = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    if (!(col_sum[j] > 0.0)) {
      throw degenerate_margin_error("balassa: product '" + name(col_labels, j, "product") +
                                    "' has zero world exports");
    }
    total += col_sum[j];
  }

  BalassaResult out{DenseMatrix(c, p), DenseMatrix()};
  for (std::size_t j = 0; j < p; ++j) {
    const double world_share = col_sum[j] / total;
    for (std::size_t i = 0; i < c; ++i) out.b(i, j) = (x(i, j) / row_sum[i]) / world_share;
  }
  out.s = threshold_indicator(out.b);
  return out;
}

inline BalassaResult balassa_matrix(const TradeMatrix& m) {
  return balassa_indices(m.x, m.countries, m.products);
}

/// Same indices evaluated cell by cell from precomputed margins:
/// (x_cp / Σ_c x_cp) / (Σ_p x_cp / ΣΣ x). Kept as a second kernel variant.
inline DenseMatrix balassa_cellwise(const DenseMatrix& x) {
  std::vector<double> row(x.rows(), 0.0), col(x.cols(), 0.0);
  double total = 0.0;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
      row[i] += x(i, j);
      col[j] += x(i, j);
      total += x(i, j);
    }
  }
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (!(row[i] > 0.0)) throw degenerate_margin_error("balassa: zero country total");
  }
  for (std::size_t j = 0; j < x.cols(); ++j) {
    if (!(col[j] > 0.0)) throw degenerate_margin_error("balassa: zero product total");
  }
  DenseMatrix b(x.rows(), x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    for (std::size_t i = 0; i < x.rows(); ++i) b(i, j) = (x(i, j) / col[j]) / (row[i] / total);
  }
  return b;
}

/// Wide CSV: header `country,<products...>`, then one row per country.
/// Values use 17 significant digits so doubles survive the round trip.
inline std::string matrix_csv(const DenseMatrix& m, const std::vector<std::string>& row_labels,
                              const std::vector<std::string>& col_labels) {
  if (row_labels.size() != m.rows() || col_labels.size() != m.cols()) {
    throw invalid_argument("export_matrix_csv: label counts do not match matrix dimensions");
  }
  std::ostringstream os;
  os << "country";
  for (const auto& p : col_labels) os << ',' << p;
  os << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << row_labels[i];
    for (std::size_t j = 0; j < m.cols(); ++j) os << ',' << detail::format_full(m(i, j));
    os << '\n';
  }
  return os.str();
}

inline void export_matrix_csv(const DenseMatrix& m, const std::vector<std::string>& row_labels,
                              const std::vector<std::string>& col_labels,
                              const std::filesystem::path& path) {
  const std::string text = matrix_csv(m, row_labels, col_labels);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw io_error("write failed: " + path.string());
}

/// Reads the wide CSV written by export_matrix_csv.
inline TradeMatrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open matrix file: " + path.string());
  std::string line;
  std::size_t line_no = 0;
  TradeMatrix out;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = detail::trim(line);
    if (view.empty()) continue;
    const auto fields = detail::split_commas(view);
    if (out.products.empty() && out.countries.empty() && line_no == 1) {
      if (fields.size() < 2) throw parse_error(line_no, "header needs at least one column label");
      for (std::size_t k = 1; k < fields.size(); ++k) out.products.emplace_back(fields[k]);
      continue;
    }
    if (fields.size() != out.products.size() + 1) {
      throw parse_error(line_no, "row width does not match header");
    }
    out.countries.emplace_back(fields[0]);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      double v = 0.0;
      if (!detail::parse_double(fields[k], v)) {
        throw parse_error(line_no, "non-numeric cell '" + std::string(fields[k]) + "'");
      }
      values.push_back(v);
    }
  }
  if (out.countries.empty()) throw parse_error(line_no, "matrix file has no data rows");
  // Rows were read in row-major order.
  const std::size_t r = out.countries.size();
  const std::size_t c = out.products.size();
  out.x = DenseMatrix(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) out.x(i, j) = values[i * c + j];
  }
  return out;
}

}  // namespace linbench
