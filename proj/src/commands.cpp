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

#include "trihom/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>

#include "CLI11.hpp"
#include "trihom/csbm3h.hpp"
#include "trihom/error.hpp"
#include "trihom/eval.hpp"
#include "trihom/metrics_feature.hpp"
#include "trihom/metrics_label.hpp"
#include "trihom/metrics_structural.hpp"
#include "trihom/stats.hpp"
#include "trihom/trihom_model.hpp"

namespace trihom {

namespace fs = std::filesystem;

namespace {

Json range(double start, double stop, double step) {
  return Json{{"start", start}, {"stop", stop}, {"step", step}};
}

Json nullable(double v) { return std::isnan(v) ? Json(nullptr) : Json(v); }

Json nullable(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

const std::vector<std::string>& all_metric_names() {
  static const std::vector<std::string> names = {
      "h_edge", "h_node", "h_class", "h_adj",  "h_den",    "h_2hop",
      "h_DN",   "h_S",    "LI",      "h_NS",   "h_agg",    "h_F",
      "h_GE",   "h_LS_cos", "h_LS_euc", "h_attr", "h_CF"};
  return names;
}

}  // namespace

Json default_config() {
  Json seeds = Json::array();
  for (int s = 0; s < 10; ++s) seeds.push_back(s);
  return Json{
      {"output_dir", "out"},
      {"generator",
       {{"h_L", 0.5},
        {"h_S", 1.0},
        {"h_F", 0.0},
        {"num_nodes", 1000},
        {"num_classes", 3},
        {"degree_min", 1},
        {"degree_max", 10},
        {"feature_dim", 3},
        {"mean_scale", 1.0},
        {"variance", 1.0},
        {"seed", 0},
        {"diffusion_power", 1},
        {"diffusion_tol", 1e-12},
        {"rho_tol", 1e-8}}},
      {"generate", {{"bundle", "bundle"}}},
      {"metrics",
       {{"dataset", ""},
        {"select", Json::array({"all"})},
        {"rho_tol", 1e-8},
        {"two_hop_denominator", "two_hop_set"},
        {"li_form", "weighted"},
        {"neighbor_k", 2},
        {"pair_sampling", false},
        {"max_pairs", 200000},
        {"seed", 0},
        {"ref_sample", 500},
        {"cf_exact_threshold", 1000},
        {"out", "metrics.json"}}},
      {"trihom",
       {{"C", 3},
        {"rho", 10.0},
        {"h_L", range(0.0, 1.0, 0.1)},
        {"h_S", range(0.0, 1.0, 0.1)},
        {"h_F", range(-0.8, 0.8, 0.2)},
        {"out", "trihom_grid.csv"},
        {"report", "trihom_grid.json"}}},
      {"verify",
       {{"C", 3},
        {"rho", 10.0},
        {"approx_grid_step", 0.01},
        {"exact_grid_step", 0.05},
        {"fd_step", 1e-5},
        {"exclusion", 0.02},
        {"nonneg_tol", 1e-9},
        {"negate_derivative", false},
        {"max_listed_violations", 100},
        {"out", "verify.json"}}},
      {"sweep",
       {{"h_L", range(0.0, 1.0, 0.1)},
        {"h_S", range(0.0, 1.0, 0.1)},
        {"h_F", range(-0.8, 0.8, 0.2)},
        {"seeds", seeds},
        {"theory_rho", 10.0},
        {"split", Json::array({0.5, 0.25, 0.25})},
        {"score", "test"},
        {"out", "sweep.csv"},
        {"report", "sweep.json"}}},
      {"correlate",
       {{"table", ""},
        {"metrics", Json::array()},
        {"performances", Json::array()},
        {"out", "correlation.json"}}},
  };
}

void set_config_value(Json& config, const std::string& dotted_key,
                      const std::string& value) {
  require(!dotted_key.empty(), ErrorCode::kInvalidArgument, "empty config key");
  Json* node = &config;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted_key.find('.', start);
    const std::string part = dotted_key.substr(start, dot - start);
    require(!part.empty(), ErrorCode::kInvalidArgument, "malformed config key");
    if (!node->is_object()) {
      fail(ErrorCode::kInvalidArgument,
           "config key '" + dotted_key + "' passes through a non-object");
    }
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  Json parsed = Json::parse(value, nullptr, false);
  *node = parsed.is_discarded() ? Json(value) : parsed;
}

std::vector<double> axis_from_json(const Json& spec) {
  if (spec.is_array()) {
    std::vector<double> out;
    for (const auto& v : spec) out.push_back(v.get<double>());
    require(!out.empty(), ErrorCode::kInvalidArgument, "axis list is empty");
    return out;
  }
  if (spec.is_number()) return {spec.get<double>()};
  require(spec.is_object() && spec.contains("start") && spec.contains("stop") &&
              spec.contains("step"),
          ErrorCode::kInvalidArgument,
          "axis must be a list or {start, stop, step}");
  return grid_axis(spec["start"].get<double>(), spec["stop"].get<double>(),
                   spec["step"].get<double>());
}

namespace {

void require_positive(const Json& section, const char* key) {
  const double v = section.at(key).get<double>();
  if (!(v > 0.0)) {
    fail(ErrorCode::kInvalidArgument, std::string(key) + " must be > 0");
  }
}

void require_seed(const Json& v) {
  if (!v.is_number_integer()) {
    fail(ErrorCode::kInvalidArgument, "seeds must be integers");
  }
  if (v.is_number_unsigned()) return;
  if (v.get<std::int64_t>() < 0) {
    fail(ErrorCode::kInvalidArgument, "seeds must be non-negative");
  }
}

std::uint64_t seed_of(const Json& v) {
  return v.is_number_unsigned() ? v.get<std::uint64_t>()
                                : static_cast<std::uint64_t>(v.get<std::int64_t>());
}

}  // namespace

void validate_config(const Json& config) {
  const Json& g = config.at("generator");
  require_positive(g, "diffusion_tol");
  require_positive(g, "rho_tol");
  require_seed(g.at("seed"));
  require_positive(config.at("metrics"), "rho_tol");
  require_seed(config.at("metrics").at("seed"));
  const Json& v = config.at("verify");
  for (const char* k : {"approx_grid_step", "exact_grid_step", "fd_step",
                        "nonneg_tol", "rho"}) {
    require_positive(v, k);
  }
  const Json& s = config.at("sweep");
  require(s.at("seeds").is_array() && !s.at("seeds").empty(),
          ErrorCode::kInvalidArgument, "sweep.seeds must be a non-empty list");
  for (const auto& seed : s.at("seeds")) require_seed(seed);
  require_positive(s, "theory_rho");
  for (const char* k : {"h_L", "h_S", "h_F"}) {
    axis_from_json(s.at(k));
    axis_from_json(config.at("trihom").at(k));
  }
  require_positive(config.at("trihom"), "rho");
}

fs::path output_dir(const Json& config) {
  if (const char* env = std::getenv("TRIHOM_OUTPUT_DIR"); env && *env) {
    return fs::path(env);
  }
  return fs::path(config.value("output_dir", std::string("out")));
}

namespace {

Csbm3hParams generator_params(const Json& g) {
  Csbm3hParams p;
  p.h_label = g.at("h_L").get<double>();
  p.h_struct = g.at("h_S").get<double>();
  p.h_feat = g.at("h_F").get<double>();
  p.num_nodes = g.at("num_nodes").get<std::size_t>();
  p.num_classes = g.at("num_classes").get<std::size_t>();
  p.degree_min = g.at("degree_min").get<std::size_t>();
  p.degree_max = g.at("degree_max").get<std::size_t>();
  p.seed = seed_of(g.at("seed"));
  p.diffusion_power = g.at("diffusion_power").get<int>();
  p.diffusion_tol = g.at("diffusion_tol").get<double>();
  p.rho_tol = g.at("rho_tol").get<double>();
  set_one_hot_means(p, g.at("feature_dim").get<std::size_t>(),
                    g.at("mean_scale").get<double>(), g.at("variance").get<double>());
  return p;
}

void write_json(const fs::path& path, const Json& doc) {
  write_file_atomic(path, doc.dump(2) + "\n");
}

}  // namespace

int cmd_generate(const Json& config, std::ostream& log) {
  const Csbm3hParams params = generator_params(config.at("generator"));
  const GeneratedGraph gen = generate(params);
  const fs::path dir = output_dir(config) / config.at("generate").at("bundle").get<std::string>();
  Json meta;
  meta["num_nodes"] = gen.dataset.num_nodes();
  meta["num_classes"] = gen.dataset.num_classes();
  meta["feature_dim"] = gen.dataset.feature_dim();
  meta["normalizations"] = Json::array();
  meta["generator"] = {
      {"targets", {{"h_L", params.h_label}, {"h_S", params.h_struct}, {"h_F", params.h_feat}}},
      {"rho", gen.rho_used},
      {"omega", gen.omega},
      {"seed", params.seed},
      {"num_edges", gen.dataset.graph().num_edges()},
      {"diffusion_terms", gen.diffusion_terms}};
  meta["config"] = config;
  save_dataset(dir, gen.dataset, meta);
  log << "wrote " << dir.string() << ": " << gen.dataset.num_nodes() << " nodes, "
      << gen.dataset.graph().num_edges() << " edges, rho=" << format_double(gen.rho_used)
      << "\n";
  return kExitOk;
}

int cmd_metrics(const Json& config, std::ostream& log) {
  const Json& mc = config.at("metrics");
  const std::string path = mc.at("dataset").get<std::string>();
  require(!path.empty(), ErrorCode::kInvalidArgument, "metrics.dataset is not set");
  LoadReport load;
  const Dataset ds = load_dataset(path, &load);
  if (load.normalization.self_loops_dropped || load.normalization.duplicates_dropped) {
    log << "load: dropped " << load.normalization.self_loops_dropped
        << " self-loops and " << load.normalization.duplicates_dropped
        << " duplicate edges\n";
  }

  std::vector<std::string> selected;
  for (const auto& s : mc.at("select")) {
    const auto name = s.get<std::string>();
    if (name == "all") {
      selected = all_metric_names();
      break;
    }
    const auto& all = all_metric_names();
    if (std::find(all.begin(), all.end(), name) == all.end()) {
      fail(ErrorCode::kInvalidArgument, "unknown metric '" + name + "'");
    }
    selected.push_back(name);
  }

  const bool literal_2hop = mc.at("two_hop_denominator").get<std::string>() == "degree";
  const bool literal_li = mc.at("li_form").get<std::string>() == "literal";
  PairSampling sampling;
  sampling.enabled = mc.at("pair_sampling").get<bool>();
  sampling.max_pairs = mc.at("max_pairs").get<std::size_t>();
  sampling.seed = seed_of(mc.at("seed"));
  ClassControlledOptions cf;
  cf.ref_sample = mc.at("ref_sample").get<std::size_t>();
  cf.exact_threshold = mc.at("cf_exact_threshold").get<std::size_t>();
  cf.seed = seed_of(mc.at("seed"));

  std::optional<double> rho;
  auto get_rho = [&] {
    if (!rho) rho = spectral_radius(ds.graph(), {.tol = mc.at("rho_tol").get<double>()});
    return *rho;
  };

  using Fn = std::function<Json()>;
  auto value = [](double v) { return Json{{"value", v}}; };
  const std::map<std::string, Fn> table = {
      {"h_edge", [&] { return value(edge_homophily(ds)); }},
      {"h_node", [&] { return value(node_homophily(ds)); }},
      {"h_class", [&] { return value(class_homophily(ds)); }},
      {"h_adj", [&] { return value(adjusted_homophily(ds)); }},
      {"h_den",
       [&] {
         Json j = value(density_aware_homophily(ds));
         j["inter_density"] = "max over other classes";
         return j;
       }},
      {"h_2hop",
       [&] {
         Json j = value(two_hop_class_similarity(
             ds, literal_2hop ? TwoHopDenominator::kDegree
                              : TwoHopDenominator::kTwoHopSetSize));
         j["denominator"] = literal_2hop ? "degree" : "two_hop_set";
         return j;
       }},
      {"h_DN",
       [&] {
         const auto k = mc.at("neighbor_k").get<std::size_t>();
         Json j = value(neighbor_homophily(ds, k));
         j["k"] = k;
         return j;
       }},
      {"h_S",
       [&] {
         const StructuralHomophily s = structural_homophily(ds);
         Json j = value(s.h_S);
         Json per = Json::array();
         for (const auto& c : s.per_class) {
           per.push_back({{"class", c.label},
                          {"members", c.members},
                          {"sigma", nullable(c.sigma)},
                          {"h_S", nullable(c.h_S)}});
         }
         j["per_class"] = per;
         j["skipped_classes"] = s.skipped_classes;
         return j;
       }},
      {"LI",
       [&] {
         Json j = value(label_informativeness(
             ds, literal_li ? LiForm::kLiteral : LiForm::kWeighted));
         j["form"] = literal_li ? "literal" : "weighted";
         return j;
       }},
      {"h_NS",
       [&] {
         const NeighborhoodSimilarity ns = neighborhood_similarity(ds, sampling);
         Json j = value(ns.value);
         j["intra_mean"] = ns.intra_mean;
         j["inter_mean"] = ns.inter_mean;
         j["sampling"] = {{"sampled", ns.sampled},
                          {"intra_pairs", ns.intra_pairs},
                          {"inter_pairs", ns.inter_pairs},
                          {"seed", sampling.seed}};
         return j;
       }},
      {"h_agg", [&] { return value(aggregation_homophily(ds)); }},
      {"h_F",
       [&] {
         const FeatureHomophilyEstimate e = estimate_feature_homophily(ds, get_rho());
         Json j = value(e.h_F);
         j["h_F_raw_mean"] = e.h_F_raw;
         j["rho_used"] = e.rho_used;
         j["degenerate_features"] = e.degenerate_features;
         Json per = Json::array();
         for (const auto& f : e.per_feature) {
           per.push_back({{"raw", f.raw},
                          {"clipped", f.clipped},
                          {"energy", f.energy},
                          {"residual", f.residual},
                          {"degenerate", f.degenerate}});
         }
         j["per_feature"] = per;
         return j;
       }},
      {"h_GE",
       [&] {
         Json j = value(generalized_edge_homophily(ds));
         j["zero_norm_rule"] = "contributes 0";
         return j;
       }},
      {"h_LS_cos", [&] { return value(local_similarity(ds, SimilarityMode::kCosine)); }},
      {"h_LS_euc", [&] { return value(local_similarity(ds, SimilarityMode::kEuclidean)); }},
      {"h_attr",
       [&] {
         const AttributeHomophily a = attribute_homophily(ds);
         Json j = value(a.value);
         Json per = Json::array();
         Json shift = Json::array();
         for (std::size_t i = 0; i < a.per_feature.size(); ++i) {
           per.push_back(nullable(a.per_feature[i]));
           shift.push_back(a.shift[i]);
         }
         j["per_feature"] = per;
         j["min_shift"] = shift;
         j["aggregation"] = "mean over valid features";
         return j;
       }},
      {"h_CF",
       [&] {
         const ClassControlledResult r = class_controlled_feature_homophily(ds, cf);
         Json j = value(r.value);
         j["sampling"] = {{"sampled", r.sampled},
                          {"reference_size", r.reference_size},
                          {"seed", cf.seed}};
         return j;
       }},
  };

  Json metrics = Json::object();
  for (const std::string& name : selected) {
    try {
      metrics[name] = table.at(name)();
    } catch (const Error& e) {
      metrics[name] = {{"value", nullptr},
                       {"error", std::string(error_code_name(e.code()))},
                       {"reason", e.what()}};
    }
  }

  Json report;
  report["config"] = config;
  report["dataset"] = {{"path", path},
                       {"num_nodes", ds.num_nodes()},
                       {"num_edges", ds.graph().num_edges()},
                       {"num_classes", ds.num_classes()},
                       {"feature_dim", ds.feature_dim()},
                       {"edges_read", load.edges_read},
                       {"self_loops_dropped", load.normalization.self_loops_dropped},
                       {"duplicates_dropped", load.normalization.duplicates_dropped}};
  if (rho) report["rho"] = *rho;
  report["metrics"] = metrics;
  const fs::path out = output_dir(config) / mc.at("out").get<std::string>();
  write_json(out, report);
  log << "wrote " << out.string() << " (" << selected.size() << " metrics)\n";
  return kExitOk;
}

int cmd_trihom(const Json& config, std::ostream& log) {
  const Json& tc = config.at("trihom");
  const auto C = tc.at("C").get<std::size_t>();
  require(C >= 2, ErrorCode::kInvalidArgument, "trihom.C must be >= 2");
  const double rho = tc.at("rho").get<double>();
  const auto hl = axis_from_json(tc.at("h_L"));
  const auto hs = axis_from_json(tc.at("h_S"));
  const auto hf = axis_from_json(tc.at("h_F"));
  std::string csv = "h_L,h_S,h_F,J_aware,J_agnostic\n";
  std::size_t rows = 0;
  for (double l : hl) {
    for (double s : hs) {
      for (double f : hf) {
        const TriHomPoint p{l, s, f, C, rho};
        csv += format_double(l) + "," + format_double(s) + "," + format_double(f) +
               "," + format_double(j_h_aware(p)) + "," + format_double(j_h_agnostic(p)) +
               "\n";
        ++rows;
      }
    }
  }
  const fs::path dir = output_dir(config);
  write_file_atomic(dir / tc.at("out").get<std::string>(), csv);
  Json report;
  report["config"] = config;
  report["rows"] = rows;
  report["axes"] = {{"h_L", hl.size()}, {"h_S", hs.size()}, {"h_F", hf.size()}};
  write_json(dir / tc.at("report").get<std::string>(), report);
  log << "wrote " << rows << " grid rows\n";
  return kExitOk;
}

namespace {

Json violation_json(const SignViolation& v) {
  return {{"suite", v.suite}, {"h_L", v.h_L}, {"h_S", v.h_S},
          {"h_F", v.h_F},         {"claim", v.claim}, {"derivative", v.derivative}};
}

Json suites_json(const std::vector<SuiteCount>& suites) {
  Json out = Json::array();
  for (const auto& s : suites) {
    out.push_back({{"suite", s.suite},
                   {"checked", s.checked},
                   {"excluded", s.excluded},
                   {"violations", s.violations}});
  }
  return out;
}

}  // namespace

int cmd_verify(const Json& config, std::ostream& log) {
  const Json& vc = config.at("verify");
  VerifyOptions o;
  o.C = vc.at("C").get<std::size_t>();
  o.rho = vc.at("rho").get<double>();
  o.approx_grid_step = vc.at("approx_grid_step").get<double>();
  o.exact_grid_step = vc.at("exact_grid_step").get<double>();
  o.fd_step = vc.at("fd_step").get<double>();
  o.exclusion = vc.at("exclusion").get<double>();
  o.nonneg_tol = vc.at("nonneg_tol").get<double>();
  o.negate_derivative = vc.at("negate_derivative").get<bool>();
  const SignReport r = verify_theorem_signs(o);
  const auto max_listed = vc.at("max_listed_violations").get<std::size_t>();

  auto listed = [&](const std::vector<SignViolation>& vs) {
    Json out = Json::array();
    for (std::size_t i = 0; i < vs.size() && i < max_listed; ++i) {
      out.push_back(violation_json(vs[i]));
    }
    return out;
  };
  Json critical = Json::array();
  for (const auto& c : r.critical_checks) {
    critical.push_back({{"h_S", c.h_S},
                        {"h_L_minus", nullable(c.h_L_minus)},
                        {"h_L_plus", nullable(c.h_L_plus)},
                        {"error_minus", c.error_minus},
                        {"error_plus", c.error_plus},
                        {"ordered", c.ordered}});
  }
  Json report;
  report["config"] = config;
  report["approx"] = {{"grid_points", r.approx_points},
                      {"suites", suites_json(r.approx_suites)},
                      {"violation_count", r.approx_violation_count()},
                      {"violations", listed(r.approx_violations)}};
  report["exact"] = {{"grid_points", r.exact_points},
                     {"suites", suites_json(r.exact_suites)},
                     {"violation_count", r.exact_violations.size()},
                     {"violation_rate", r.exact_violation_rate()},
                     {"exclusion", o.exclusion},
                     {"violations", listed(r.exact_violations)}};
  report["critical"] = {{"checks", critical},
                        {"max_error", r.max_critical_error}};
  const bool ok = r.approx_violation_count() == 0;
  report["passed"] = ok;
  const fs::path out = output_dir(config) / vc.at("out").get<std::string>();
  write_json(out, report);
  log << "approx violations: " << r.approx_violation_count()
      << ", exact violation rate: " << format_double(r.exact_violation_rate()) << "\n";
  return ok ? kExitOk : kExitVerification;
}

int cmd_sweep(const Json& config, std::ostream& log) {
  const Json& sc = config.at("sweep");
  SweepGrid grid;
  grid.h_L = axis_from_json(sc.at("h_L"));
  grid.h_S = axis_from_json(sc.at("h_S"));
  grid.h_F = axis_from_json(sc.at("h_F"));
  std::vector<std::uint64_t> seeds;
  for (const auto& s : sc.at("seeds")) seeds.push_back(seed_of(s));
  SweepOptions opts;
  opts.theory_rho = sc.at("theory_rho").get<double>();
  const auto split = sc.at("split").get<std::vector<double>>();
  require(split.size() == 3, ErrorCode::kInvalidArgument,
          "sweep.split needs three ratios");
  opts.split_ratios = {split[0], split[1], split[2]};
  const std::string score = sc.at("score").get<std::string>();
  require(score == "test" || score == "validation", ErrorCode::kInvalidArgument,
          "sweep.score must be test or validation");
  opts.score_part = score == "test" ? ScorePart::kTest : ScorePart::kValidation;

  const Csbm3hParams tmpl = generator_params(config.at("generator"));
  const std::vector<SweepRecord> records = run_sweep(grid, tmpl, seeds, opts);

  const fs::path dir = output_dir(config);
  write_file_atomic(dir / sc.at("out").get<std::string>(), sweep_csv(records));
  std::size_t flagged = 0;
  Json notes = Json::array();
  for (const auto& r : records) {
    if (r.notes.empty()) continue;
    ++flagged;
    if (notes.size() < 1000) {
      notes.push_back({{"point_index", r.point_index},
                       {"seed", r.seed},
                       {"notes", r.notes},
                       {"Jh_target_aware", r.Jh_target_aware},
                       {"Jh_target_agnostic", r.Jh_target_agnostic}});
    }
  }
  Json report;
  report["config"] = config;
  report["records"] = records.size();
  report["grid_points"] = grid.num_points();
  report["flagged_records"] = flagged;
  report["flags"] = notes;
  write_json(dir / sc.at("report").get<std::string>(), report);
  log << "wrote " << records.size() << " sweep records (" << flagged << " flagged)\n";
  return kExitOk;
}

int cmd_correlate(const Json& config, std::ostream& log) {
  const Json& cc = config.at("correlate");
  const std::string path = cc.at("table").get<std::string>();
  require(!path.empty(), ErrorCode::kInvalidArgument, "correlate.table is not set");
  const CsvTable t = read_csv(path);
  auto names = [](const Json& j) { return j.get<std::vector<std::string>>(); };
  std::vector<std::string> perf = names(cc.at("performances"));
  std::vector<std::string> mets = names(cc.at("metrics"));
  require(!perf.empty(), ErrorCode::kInvalidArgument,
          "correlate.performances must name at least one column");
  if (mets.empty()) {
    for (const auto& h : t.header) {
      if (std::find(perf.begin(), perf.end(), h) == perf.end()) mets.push_back(h);
    }
  }
  auto column = [&](const std::string& name) {
    const auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) {
      fail(ErrorCode::kParseError, "table has no column '" + name + "'");
    }
    const auto idx = static_cast<std::size_t>(it - t.header.begin());
    NamedColumn col{name, {}};
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const std::string& cell = t.rows[r][idx];
      double v = std::nan("");
      if (!cell.empty() && cell != "nan" && cell != "NaN" && cell != "NA") {
        const auto [ptr, ec] =
            std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || ptr != cell.data() + cell.size()) {
          fail(ErrorCode::kParseError, fs::path(path).filename().string() + ":" +
                                           std::to_string(t.line_numbers[r]) +
                                           ": not a number: '" + cell + "'");
        }
      }
      col.values.push_back(v);
    }
    return col;
  };
  std::vector<NamedColumn> mcols, pcols;
  for (const auto& n : mets) mcols.push_back(column(n));
  for (const auto& n : perf) pcols.push_back(column(n));
  const CorrelationTable table = correlate_table(mcols, pcols);

  Json cells = Json::array();
  for (const auto& c : table.cells) {
    Json j = {{"metric", c.metric},   {"model", c.model},
              {"n", c.n},             {"pearson", nullable(c.pearson)},
              {"kendall_tau_a", nullable(c.kendall)},
              {"rank", nullable(c.rank)}, {"kendall_rank", nullable(c.kendall_rank)}};
    if (!c.pearson_error.empty()) j["pearson_error"] = c.pearson_error;
    if (!c.kendall_error.empty()) j["kendall_error"] = c.kendall_error;
    cells.push_back(j);
  }
  Json summary = Json::array();
  for (const auto& m : table.metrics) {
    summary.push_back({{"metric", m.metric},
                       {"average_rank", nullable(m.average_rank)},
                       {"average_kendall_rank", nullable(m.average_kendall_rank)}});
  }
  Json report;
  report["config"] = config;
  report["rows"] = t.rows.size();
  report["cells"] = cells;
  report["metrics"] = summary;
  report["tie_rule"] = "mid-rank";
  const fs::path out = output_dir(config) / cc.at("out").get<std::string>();
  write_json(out, report);
  log << "wrote " << out.string() << "\n";
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Three-aspect graph homophily toolkit"};
  app.require_subcommand(1);
  std::string config_file;
  std::vector<std::string> sets;
  std::string out_dir;
  app.add_option("--config", config_file, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--set", sets, "Override a config value: section.key=JSON");
  app.add_option("--output-dir", out_dir, "Output directory");

  // Named flags are stored as (config key, value) pairs applied last.
  std::vector<std::pair<std::string, std::string>> named;
  auto flag = [&](CLI::App* sub, const std::string& opt, const std::string& key,
                  const std::string& help) {
    sub->add_option_function<std::string>(
        opt, [&named, key](const std::string& v) { named.emplace_back(key, v); }, help);
  };

  auto* gen = app.add_subcommand("generate", "Sample a CSBM-3H dataset bundle");
  flag(gen, "--h-L", "generator.h_L", "Target label homophily");
  flag(gen, "--h-S", "generator.h_S", "Target structural homophily");
  flag(gen, "--h-F", "generator.h_F", "Target feature homophily");
  flag(gen, "--num-nodes", "generator.num_nodes", "Node count");
  flag(gen, "--num-classes", "generator.num_classes", "Class count");
  flag(gen, "--seed", "generator.seed", "Seed");
  flag(gen, "--bundle", "generate.bundle", "Bundle directory under the output dir");

  auto* met = app.add_subcommand("metrics", "Compute homophily metrics of a bundle");
  flag(met, "--dataset", "metrics.dataset", "Bundle directory");
  flag(met, "--select", "metrics.select", "JSON list of metric names");
  flag(met, "--out", "metrics.out", "Report file name");

  auto* tri = app.add_subcommand("trihom", "Evaluate the analytic factors on a grid");
  flag(tri, "--C", "trihom.C", "Class count");
  flag(tri, "--rho", "trihom.rho", "Spectral radius");
  flag(tri, "--out", "trihom.out", "CSV file name");

  auto* ver = app.add_subcommand("verify", "Check derivative sign claims numerically");
  flag(ver, "--C", "verify.C", "Class count");
  flag(ver, "--rho", "verify.rho", "Spectral radius for the exact forms");
  flag(ver, "--out", "verify.out", "Report file name");

  auto* swp = app.add_subcommand("sweep", "Run the synthetic sweep");
  flag(swp, "--seeds", "sweep.seeds", "JSON list of seeds");
  flag(swp, "--h-L", "sweep.h_L", "Axis: JSON list or {start,stop,step}");
  flag(swp, "--h-S", "sweep.h_S", "Axis: JSON list or {start,stop,step}");
  flag(swp, "--h-F", "sweep.h_F", "Axis: JSON list or {start,stop,step}");
  flag(swp, "--out", "sweep.out", "CSV file name");

  auto* cor = app.add_subcommand("correlate", "Correlate metric and performance columns");
  flag(cor, "--table", "correlate.table", "Input CSV");
  flag(cor, "--metrics", "correlate.metrics", "JSON list of metric columns");
  flag(cor, "--performances", "correlate.performances", "JSON list of model columns");
  flag(cor, "--out", "correlate.out", "Report file name");

  for (CLI::App* sub : {gen, met, tri, ver, swp, cor}) {
    sub->add_option("--config", config_file, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--set", sets, "Override a config value: section.key=JSON");
    sub->add_option("--output-dir", out_dir, "Output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    Json config = default_config();
    if (!config_file.empty()) {
      Json file_cfg;
      try {
        file_cfg = Json::parse(read_file(config_file));
      } catch (const Json::parse_error& e) {
        fail(ErrorCode::kParseError, config_file + ": " + e.what());
      }
      config.merge_patch(file_cfg);
    }
    for (const std::string& s : sets) {
      const std::size_t eq = s.find('=');
      require(eq != std::string::npos, ErrorCode::kInvalidArgument,
              "--set expects key=value");
      set_config_value(config, s.substr(0, eq), s.substr(eq + 1));
    }
    for (const auto& [key, v] : named) set_config_value(config, key, v);
    if (!out_dir.empty()) config["output_dir"] = out_dir;
    validate_config(config);

    if (gen->parsed()) return cmd_generate(config, err);
    if (met->parsed()) return cmd_metrics(config, err);
    if (tri->parsed()) return cmd_trihom(config, err);
    if (ver->parsed()) return cmd_verify(config, err);
    if (swp->parsed()) return cmd_sweep(config, err);
    return cmd_correlate(config, err);
  } catch (const Error& e) {
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kDegenerate:
      case ErrorCode::kDegenerateGraph:
      case ErrorCode::kEmptyGraph:
      case ErrorCode::kTooFewNodes:
      case ErrorCode::kMissingClass:
      case ErrorCode::kConstantInput:
      case ErrorCode::kNonConvergence:
        return kExitDegenerate;
      default:
        return kExitUsage;
    }
  } catch (const Json::exception& e) {
    err << "error [config]: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace trihom
