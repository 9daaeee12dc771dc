#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace homlab {

/// Minimal column-oriented table writer (CSV and gnuplot-ready .dat).
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(const std::vector<double>& row) {
    if (row.size() != columns_.size())
      throw std::invalid_argument("Table: row width mismatch");
    rows_.push_back(row);
  }

  void write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("Table: cannot write " + path);
    for (std::size_t c = 0; c < columns_.size(); ++c)
      out << columns_[c] << (c + 1 < columns_.size() ? "," : "\n");
    out.precision(15);
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.size(); ++c)
        out << r[c] << (c + 1 < r.size() ? "," : "\n");
    }
  }

  void write_gnuplot(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("Table: cannot write " + path);
    out << "#";
    for (const auto& c : columns_) out << " " << c;
    out << "\n";
    out.precision(15);
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.size(); ++c) out << r[c] << " ";
      out << "\n";
    }
  }

  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace homlab
