// Copyright 2026 The Trihom Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// On-disk formats: the dataset bundle (edges.csv, labels.csv, features.csv,
// meta.json), sweep and grid CSV tables, and atomic file writes.

#ifndef TRIHOM_IO_HPP_
#define TRIHOM_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "trihom/eval.hpp"
#include "trihom/graph.hpp"

namespace trihom {

using Json = nlohmann::ordered_json;

/// "%.17g", or "nan" for NaN.
std::string format_double(double v);

/// Writes through a sibling temporary file and renames it into place.
/// Creates parent directories. Throws kIoError.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

/// Throws kIoError when the file cannot be read.
std::string read_file(const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

/// Comma-separated, no quoting; blank lines skipped; every row must have the
/// header's width. Throws kParseError naming file and line.
CsvTable read_csv(const std::filesystem::path& path);

struct LoadReport {
  EdgeNormalization normalization;
  std::size_t edges_read = 0;
};

/// Reads a bundle directory. Throws kParseError(file:line),
/// kInconsistentSizes and kNonContiguousIds.
Dataset load_dataset(const std::filesystem::path& dir,
                     LoadReport* report = nullptr);

/// Reads meta.json of a bundle.
Json load_meta(const std::filesystem::path& dir);

/// Writes the three CSV files and meta.json. `meta` is written as given
/// after num_nodes/num_classes/feature_dim are set from the dataset.
void save_dataset(const std::filesystem::path& dir, const Dataset& dataset,
                  Json meta);

extern const char* const kSweepColumns[14];

std::string sweep_csv(const std::vector<SweepRecord>& records);

}  // namespace trihom

#endif  // TRIHOM_IO_HPP_
