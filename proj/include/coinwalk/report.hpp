// Copyright 2026 The coinwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COINWALK_REPORT_HPP
#define COINWALK_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace coinwalk::report {

/// Fixed 17-significant-digit scientific notation ("%.16e").
std::string format_real(double x);

/// In-memory CSV table: UTF-8, LF line endings, one header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable &row() {
    rows_.emplace_back();
    return *this;
  }
  CsvTable &add(double x);
  CsvTable &add(int x);
  CsvTable &add(const std::string &text);

  std::size_t size() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool bars = false;
};

/// Minimal static SVG chart: axes, tick labels, one polyline (or bar set)
/// per series and a legend.
std::string svg_plot(const PlotSpec &spec, const std::vector<Series> &series);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string &bytes);
/// Git blob id: SHA-1 of "blob <size>\0" followed by the bytes.
std::string git_blob_id(const std::string &bytes);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, const std::string &bytes);

}  // namespace coinwalk::report

#endif  // COINWALK_REPORT_HPP
