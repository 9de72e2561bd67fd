#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stagewise/dataset.hpp"
#include "stagewise/errors.hpp"

namespace stagewise {

struct CsvOptions {
  char delimiter = '\0';        // '\0': sniff tab vs comma from the header
  std::string train_column;     // flag column treated as boolean
  int train_filter = 0;         // +1 keep flagged rows, -1 keep the rest, 0 all
  bool drop_train_column = true;
};

namespace detail {

inline std::vector<std::string> split_line(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

inline double parse_cell(const std::string& cell, int line, int col,
                         bool boolean_ok) {
  std::string s = cell;
  // trim
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  if (boolean_ok) {
    if (s == "T" || s == "TRUE" || s == "true") return 1.0;
    if (s == "F" || s == "FALSE" || s == "false") return 0.0;
  }
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ParseError(line, col, "expected a number, got \"" + cell + "\"");
  return value;
}

}  // namespace detail

// Load a delimited text file with a header row into a Dataset. Accepts the
// R write.table convention where data rows carry one extra leading field
// of row labels. Cells must be numeric except in the designated train-flag
// column, where T/F (or TRUE/FALSE) are accepted.
inline Dataset load_csv(const std::string& path,
                        const std::string& response_column,
                        const CsvOptions& opt = CsvOptions{}) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);

  std::string header_line;
  if (!std::getline(in, header_line))
    throw ValidationError("empty file: " + path);
  const char sep = opt.delimiter != '\0'
                       ? opt.delimiter
                       : (header_line.find('\t') != std::string::npos ? '\t'
                                                                      : ',');
  std::vector<std::string> header = detail::split_line(header_line, sep);
  if (!header.empty() && header.front().empty())
    header.erase(header.begin());  // unnamed row-label column

  int response_idx = -1;
  int train_idx = -1;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == response_column) response_idx = static_cast<int>(j);
    if (!opt.train_column.empty() && header[j] == opt.train_column)
      train_idx = static_cast<int>(j);
  }
  if (response_idx < 0) throw MissingColumnError(response_column);
  if (!opt.train_column.empty() && train_idx < 0)
    throw MissingColumnError(opt.train_column);

  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells = detail::split_line(line, sep);
    if (cells.size() == header.size() + 1)
      cells.erase(cells.begin());  // row label
    if (cells.size() != header.size())
      throw ParseError(lineno, 1,
                       "expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(cells.size()));
    std::vector<double> row(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j)
      row[j] = detail::parse_cell(cells[j], lineno, static_cast<int>(j) + 1,
                                  static_cast<int>(j) == train_idx);
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw ValidationError("need at least 2 data rows");

  if (opt.train_filter != 0) {
    std::vector<std::vector<double>> kept;
    for (auto& r : rows) {
      const bool flagged = r[static_cast<std::size_t>(train_idx)] != 0.0;
      if ((opt.train_filter > 0) == flagged) kept.push_back(std::move(r));
    }
    rows = std::move(kept);
    if (rows.size() < 2) throw ValidationError("train filter left < 2 rows");
  }

  std::vector<int> predictor_cols;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (static_cast<int>(j) == response_idx) continue;
    if (static_cast<int>(j) == train_idx && opt.drop_train_column) continue;
    predictor_cols.push_back(static_cast<int>(j));
  }

  Dataset d;
  d.X.resize(static_cast<Index>(rows.size()),
             static_cast<Index>(predictor_cols.size()));
  d.y.resize(static_cast<Index>(rows.size()));
  for (const int j : predictor_cols)
    d.names.push_back(header[static_cast<std::size_t>(j)]);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    d.y[static_cast<Index>(i)] = rows[i][static_cast<std::size_t>(response_idx)];
    for (std::size_t jj = 0; jj < predictor_cols.size(); ++jj)
      d.X(static_cast<Index>(i), static_cast<Index>(jj)) =
          rows[i][static_cast<std::size_t>(predictor_cols[jj])];
  }
  d.validate();
  return d;
}

// The prostate cancer benchmark: response lpsa, 8 predictors, and the
// canonical 67-row training split selected by the file's train flag.
inline Dataset load_prostate(const std::string& path) {
  CsvOptions opt;
  opt.train_column = "train";
  opt.train_filter = 1;
  return load_csv(path, "lpsa", opt);
}

}  // namespace stagewise
