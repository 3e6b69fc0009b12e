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

#include "trihom/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "trihom/error.hpp"

namespace trihom {

namespace fs = std::filesystem;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIoError, "cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(ErrorCode::kIoError, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fail(ErrorCode::kIoError,
         "cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view cell = line.substr(start, comma - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
      cell.remove_prefix(1);
    }
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' ||
                             cell.back() == '\r')) {
      cell.remove_suffix(1);
    }
    out.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void parse_error(const fs::path& file, std::size_t line,
                              const std::string& what) {
  fail(ErrorCode::kParseError,
       file.filename().string() + ":" + std::to_string(line) + ": " + what);
}

std::uint64_t parse_id(const std::string& s, const fs::path& file,
                       std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    parse_error(file, line, "expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

double parse_real(const std::string& s, const fs::path& file, std::size_t line) {
  if (s == "nan" || s == "NaN" || s == "NAN") return std::nan("");
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    parse_error(file, line, "expected a number, got '" + s + "'");
  }
  return v;
}

void expect_header(const CsvTable& t, const fs::path& file,
                   const std::vector<std::string>& want) {
  if (t.header.size() < want.size() ||
      !std::equal(want.begin(), want.end(), t.header.begin())) {
    std::string joined;
    for (const auto& w : want) joined += (joined.empty() ? "" : ",") + w;
    parse_error(file, 1, "header must start with '" + joined + "'");
  }
}

}  // namespace

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot read " + path.string());
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_line(line);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      parse_error(path, lineno,
                  "expected " + std::to_string(t.header.size()) + " fields, got " +
                      std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
    t.line_numbers.push_back(lineno);
  }
  if (!have_header) parse_error(path, 1, "missing header row");
  return t;
}

Json load_meta(const fs::path& dir) {
  const fs::path file = dir / "meta.json";
  try {
    return Json::parse(read_file(file));
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kParseError, "meta.json: " + std::string(e.what()));
  }
}

Dataset load_dataset(const fs::path& dir, LoadReport* report) {
  const Json meta = load_meta(dir);

  // Labels define the node set.
  const fs::path labels_file = dir / "labels.csv";
  const CsvTable lt = read_csv(labels_file);
  expect_header(lt, labels_file, {"node", "label"});
  const std::size_t n = lt.rows.size();
  std::vector<ClassId> labels(n);
  std::vector<std::uint8_t> seen(n, 0);
  ClassId max_label = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ln = lt.line_numbers[i];
    const std::uint64_t id = parse_id(lt.rows[i][0], labels_file, ln);
    const std::uint64_t y = parse_id(lt.rows[i][1], labels_file, ln);
    if (id >= n || seen[id]) {
      fail(ErrorCode::kNonContiguousIds,
           "labels.csv:" + std::to_string(ln) + ": node ids must be 0.." +
               std::to_string(n - 1) + " with no gaps or repeats (got " +
               std::to_string(id) + ")");
    }
    seen[id] = 1;
    labels[id] = static_cast<ClassId>(y);
    max_label = std::max(max_label, static_cast<ClassId>(y));
  }

  std::size_t num_classes = n > 0 ? max_label + 1 : 0;
  if (meta.contains("num_nodes") && meta["num_nodes"].get<std::size_t>() != n) {
    fail(ErrorCode::kInconsistentSizes,
         "meta.json num_nodes=" + std::to_string(meta["num_nodes"].get<std::size_t>()) +
             " but labels.csv has " + std::to_string(n) + " rows");
  }
  if (meta.contains("num_classes")) {
    const auto c = meta["num_classes"].get<std::size_t>();
    if (c < num_classes) {
      fail(ErrorCode::kInconsistentSizes,
           "labels exceed meta.json num_classes=" + std::to_string(c));
    }
    num_classes = c;
  }

  const fs::path feat_file = dir / "features.csv";
  const CsvTable ft = read_csv(feat_file);
  expect_header(ft, feat_file, {"node"});
  const std::size_t m = ft.header.size() - 1;
  if (ft.rows.size() != n) {
    fail(ErrorCode::kInconsistentSizes,
         "features.csv has " + std::to_string(ft.rows.size()) + " rows, labels.csv " +
             std::to_string(n));
  }
  if (meta.contains("feature_dim") && meta["feature_dim"].get<std::size_t>() != m) {
    fail(ErrorCode::kInconsistentSizes, "meta.json feature_dim disagrees with features.csv");
  }
  Matrix x(n, m);
  std::fill(seen.begin(), seen.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ln = ft.line_numbers[i];
    const std::uint64_t id = parse_id(ft.rows[i][0], feat_file, ln);
    if (id >= n || seen[id]) {
      fail(ErrorCode::kNonContiguousIds,
           "features.csv:" + std::to_string(ln) + ": bad or repeated node id " +
               std::to_string(id));
    }
    seen[id] = 1;
    for (std::size_t j = 0; j < m; ++j) {
      x(id, j) = parse_real(ft.rows[i][j + 1], feat_file, ln);
    }
  }

  const fs::path edge_file = dir / "edges.csv";
  const CsvTable et = read_csv(edge_file);
  expect_header(et, edge_file, {"u", "v"});
  std::vector<Edge> edges;
  edges.reserve(et.rows.size());
  for (std::size_t i = 0; i < et.rows.size(); ++i) {
    const std::size_t ln = et.line_numbers[i];
    const std::uint64_t u = parse_id(et.rows[i][0], edge_file, ln);
    const std::uint64_t v = parse_id(et.rows[i][1], edge_file, ln);
    if (u >= n || v >= n) {
      fail(ErrorCode::kInconsistentSizes,
           "edges.csv:" + std::to_string(ln) + ": node id outside [0," +
               std::to_string(n) + ")");
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  LoadReport local;
  local.edges_read = edges.size();
  Graph g = Graph::from_edges_normalized(n, edges, &local.normalization);
  if (report != nullptr) *report = local;
  return Dataset(std::move(g), std::move(labels), num_classes, std::move(x));
}

void save_dataset(const fs::path& dir, const Dataset& dataset, Json meta) {
  std::string edges = "u,v\n";
  for (const Edge& e : dataset.graph().edge_list()) {
    edges += std::to_string(e.u) + "," + std::to_string(e.v) + "\n";
  }
  std::string labels = "node,label\n";
  for (std::size_t u = 0; u < dataset.num_nodes(); ++u) {
    labels += std::to_string(u) + "," +
              std::to_string(dataset.label(static_cast<NodeId>(u))) + "\n";
  }
  std::string feats = "node";
  for (std::size_t j = 0; j < dataset.feature_dim(); ++j) {
    feats += ",f" + std::to_string(j);
  }
  feats += "\n";
  for (std::size_t u = 0; u < dataset.num_nodes(); ++u) {
    feats += std::to_string(u);
    for (double v : dataset.features().row(u)) feats += "," + format_double(v);
    feats += "\n";
  }
  meta["num_nodes"] = dataset.num_nodes();
  meta["num_classes"] = dataset.num_classes();
  meta["feature_dim"] = dataset.feature_dim();
  if (!meta.contains("normalizations")) meta["normalizations"] = Json::array();
  write_file_atomic(dir / "edges.csv", edges);
  write_file_atomic(dir / "labels.csv", labels);
  write_file_atomic(dir / "features.csv", feats);
  write_file_atomic(dir / "meta.json", meta.dump(2) + "\n");
}

const char* const kSweepColumns[14] = {
    "h_L_target",      "h_S_target",         "h_F_target",       "seed",
    "h_L_measured",    "h_S_measured",       "h_F_measured",     "rho",
    "J_emp_aware",     "J_emp_agnostic",     "Jh_theory_aware",  "Jh_theory_agnostic",
    "acc_aware",       "acc_agnostic"};

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::string out;
  for (std::size_t i = 0; i < 14; ++i) {
    out += (i ? "," : "");
    out += kSweepColumns[i];
  }
  out += "\n";
  for (const SweepRecord& r : records) {
    const double vals[] = {r.h_L_measured, r.h_S_measured, r.h_F_measured, r.rho,
                           r.J_emp_aware, r.J_emp_agnostic, r.Jh_theory_aware,
                           r.Jh_theory_agnostic, r.acc_aware, r.acc_agnostic};
    out += format_double(r.h_L_target) + "," + format_double(r.h_S_target) + "," +
           format_double(r.h_F_target) + "," + std::to_string(r.seed);
    for (double v : vals) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

}  // namespace trihom
