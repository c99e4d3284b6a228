#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "config.hpp"

namespace qlink {

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path), width_(header.size()) {
    if (!out_) fail(ErrorCode::io, "cannot write " + path);
    line(header);
  }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    line(cells);
  }

  void line(const std::vector<std::string>& cells) {
    if (cells.size() != width_) fail(ErrorCode::io, "csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

 private:
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace qlink
