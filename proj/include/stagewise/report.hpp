#pragma once

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "stagewise/dataset.hpp"
#include "stagewise/errors.hpp"

namespace stagewise {

// All report numbers go through one formatter: 12 significant digits,
// shortest form, so identical runs serialize byte for byte.
inline std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row) {
    if (row.size() != columns.size())
      throw ValidationError("table " + name + ": row width mismatch");
    rows.push_back(std::move(row));
  }
};

struct ExperimentReport {
  std::string label;
  std::uint64_t seed = 0;
  std::string config;
  std::uint64_t dataset_hash = 0;
  std::vector<Table> tables;

  const Table& table(const std::string& name) const {
    for (const auto& t : tables)
      if (t.name == name) return t;
    throw ValidationError("report has no table: " + name);
  }
};

// FNV-1a over the 12-significant-digit serialization of X and y; stable
// across runs and platforms for identical data.
inline std::uint64_t dataset_hash(const Dataset& d) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const std::string& s) {
    for (const unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& name : d.names) mix(name + ";");
  for (Index i = 0; i < d.n(); ++i) {
    for (Index j = 0; j < d.p(); ++j) mix(format_g12(d.X(i, j)) + ",");
    mix(format_g12(d.y[i]) + "\n");
  }
  return h;
}

inline std::string table_csv(const Table& t) {
  std::string out;
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    out += t.columns[j];
    out += j + 1 < t.columns.size() ? ',' : '\n';
  }
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out += format_g12(row[j]);
      out += j + 1 < row.size() ? ',' : '\n';
    }
  }
  return out;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// One JSON envelope per report: label, provenance, and every table inline.
// Hand-rolled so the number format (and therefore the bytes) match the CSV
// files exactly.
inline std::string report_json(const ExperimentReport& r) {
  std::string out = "{\n";
  out += "  \"label\": \"" + json_escape(r.label) + "\",\n";
  out += "  \"provenance\": {\n";
  out += "    \"seed\": " + std::to_string(r.seed) + ",\n";
  out += "    \"config\": \"" + json_escape(r.config) + "\",\n";
  char hash_buf[24];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016" PRIx64, r.dataset_hash);
  out += std::string("    \"dataset_hash\": \"") + hash_buf + "\"\n";
  out += "  },\n";
  out += "  \"tables\": [\n";
  for (std::size_t t = 0; t < r.tables.size(); ++t) {
    const auto& tab = r.tables[t];
    out += "    {\"name\": \"" + json_escape(tab.name) + "\", \"columns\": [";
    for (std::size_t j = 0; j < tab.columns.size(); ++j) {
      out += "\"" + json_escape(tab.columns[j]) + "\"";
      if (j + 1 < tab.columns.size()) out += ", ";
    }
    out += "], \"rows\": [";
    for (std::size_t i = 0; i < tab.rows.size(); ++i) {
      out += "[";
      for (std::size_t j = 0; j < tab.rows[i].size(); ++j) {
        out += format_g12(tab.rows[i][j]);
        if (j + 1 < tab.rows[i].size()) out += ", ";
      }
      out += "]";
      if (i + 1 < tab.rows.size()) out += ", ";
    }
    out += "]}";
    if (t + 1 < r.tables.size()) out += ",";
    out += "\n";
  }
  out += "  ]\n}\n";
  return out;
}

// Writes <label>_<table>.csv per table plus <label>_report.json.
inline void write_report(const ExperimentReport& r,
                         const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  for (const auto& t : r.tables) {
    std::ofstream f(fs::path(out_dir) / (r.label + "_" + t.name + ".csv"),
                    std::ios::binary);
    if (!f) throw ValidationError("cannot write table file in " + out_dir);
    f << table_csv(t);
  }
  std::ofstream f(fs::path(out_dir) / (r.label + "_report.json"),
                  std::ios::binary);
  if (!f) throw ValidationError("cannot write report file in " + out_dir);
  f << report_json(r);
}

}  // namespace stagewise
