// Copyright 2026 The SpikeBench Authors
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

#include "spikebench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "spikebench/rng.hpp"

namespace spikebench {

using nlohmann::json;

const std::vector<double> kThresholdGrid = {1.00, 0.50, 0.40, 0.30, 0.20, 0.10, 0.05};
const std::vector<double> kDecayGrid = {0.100, 0.05, 0.03, 0.01};
const std::vector<double> kLearningRateGrid = {0.0500, 0.0100, 0.0010, 0.0098, 0.0001};

namespace {

constexpr const char* kConfigHeader = "spikebench-config v1";

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool in_grid(double v, const std::vector<double>& grid) {
  for (double g : grid)
    if (std::abs(v - g) <= 1e-9) return true;
  return false;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

const char* category_name(RuleCategory cat) {
  switch (cat) {
    case RuleCategory::kUnsupervised: return "unsupervised";
    case RuleCategory::kSupervised: return "supervised";
    case RuleCategory::kHybrid: return "hybrid";
  }
  return "unknown";
}

std::size_t rule_rank(const std::string& rule) {
  const std::vector<std::string>& names = rule_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == rule) return i;
  return names.size();
}

std::size_t source_rank(const std::string& source) {
  if (source == "bernoulli") return 0;
  if (source == "markov") return 1;
  if (source == "poisson") return 2;
  return 3;
}

std::size_t category_rank(const std::string& category) {
  if (category == "unsupervised") return 0;
  if (category == "supervised") return 1;
  if (category == "hybrid") return 2;
  return 3;
}

// Stable table order: category, rule, dataset, then the remaining grid axes.
void sort_rows(std::vector<BenchRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    const auto key = [](const BenchRow& r) {
      return std::make_tuple(category_rank(r.category), rule_rank(r.rule),
                             source_rank(r.source), r.n, r.threshold, r.decay, r.eta);
    };
    return key(a) < key(b);
  });
}

void mark_best_rows(std::vector<BenchRow>& rows) {
  std::map<std::pair<std::string, std::string>, std::size_t> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].failed) continue;
    const auto key = std::make_pair(rows[i].rule, rows[i].source);
    const auto it = best.find(key);
    if (it == best.end()) {
      best[key] = i;
      continue;
    }
    const BenchRow& cur = rows[it->second];
    const BenchRow& cand = rows[i];
    const bool better =
        cand.metrics.accuracy_pct > cur.metrics.accuracy_pct ||
        (cand.metrics.accuracy_pct == cur.metrics.accuracy_pct &&
         (cand.time_s < cur.time_s ||
          (cand.time_s == cur.time_s && cand.n < cur.n)));
    if (better) it->second = i;
  }
  for (BenchRow& r : rows) r.best = false;
  for (const auto& [key, idx] : best) rows[idx].best = true;
}

void finalize_report(BenchmarkReport& report) {
  sort_rows(report.rows);
  mark_best_rows(report.rows);
}

std::string environment_note() {
  std::ostringstream os;
  os << "spikebench v1; " << std::thread::hardware_concurrency() << " hw threads";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
  for (const std::string& r : rules)
    require(rule_rank(r) < rule_names().size(), "unknown rule: " + r);
  for (const std::string& s : sources)
    require(source_rank(s) < 3, "unknown source: " + s);
  for (std::size_t n : widths)
    require(supported_width(n), "width outside the supported grid");
  for (double t : thresholds)
    require(in_grid(t, kThresholdGrid), "threshold outside the declared domain");
  for (double d : decays)
    require(in_grid(d, kDecayGrid), "decay outside the declared domain");
  for (double e : learning_rates)
    require(in_grid(e, kLearningRateGrid), "learning rate outside the declared domain");
  require(epochs >= 1, "epochs must be >= 1");
  require(count_per_class >= 1, "count_per_class must be >= 1");
  require(length >= 2, "length must be >= 2");
  require(!seeds.empty(), "at least one seed is required");
}

std::size_t ExperimentConfig::cell_count() const {
  return rules.size() * sources.size() * widths.size() * thresholds.size() *
         decays.size() * learning_rates.size();
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "empty config");
  // Trim trailing whitespace from the header line.
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
    line.pop_back();
  require(line == kConfigHeader,
          std::string("config must start with `") + kConfigHeader + "`");

  ExperimentConfig cfg;
  cfg.rules = rule_names();
  cfg.sources = {"bernoulli", "markov", "poisson"};
  cfg.widths.assign(kLayerWidths.begin(), kLayerWidths.end());
  cfg.thresholds = kThresholdGrid;
  cfg.decays = kDecayGrid;
  cfg.learning_rates = kLearningRateGrid;

  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string key;
    if (!(row >> key) || key[0] == '#') continue;

    std::vector<std::string> values;
    std::string v;
    while (row >> v) values.push_back(v);

    auto as_doubles = [&]() {
      std::vector<double> out;
      for (const std::string& s : values) out.push_back(std::stod(s));
      return out;
    };
    auto as_sizes = [&]() {
      std::vector<std::size_t> out;
      for (const std::string& s : values) out.push_back(std::stoull(s));
      return out;
    };
    auto one = [&]() {
      require(values.size() == 1, "key `" + key + "` takes exactly one value");
      return values[0];
    };

    if (key == "rules") {
      cfg.rules = values;
    } else if (key == "sources") {
      cfg.sources = values;
    } else if (key == "n") {
      cfg.widths = as_sizes();
    } else if (key == "thresholds") {
      cfg.thresholds = as_doubles();
    } else if (key == "decays") {
      cfg.decays = as_doubles();
    } else if (key == "etas") {
      cfg.learning_rates = as_doubles();
    } else if (key == "epochs") {
      cfg.epochs = std::stoull(one());
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const std::string& s : values) cfg.seeds.push_back(std::stoull(s));
    } else if (key == "count_per_class") {
      cfg.count_per_class = std::stoull(one());
    } else if (key == "length") {
      cfg.length = std::stoull(one());
    } else if (key == "mode") {
      const std::string m = one();
      require(m == "fast" || m == "full", "mode must be fast or full");
      cfg.fast = m == "fast";
    } else if (key == "out") {
      cfg.out = one();
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  return parse_experiment_config(in);
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

namespace {

struct Cell {
  std::size_t index;
  std::string rule;
  std::string source;
  std::size_t n;
  double threshold;
  double decay;
  double eta;
};

std::vector<Cell> enumerate_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  std::size_t index = 0;
  for (const std::string& rule : cfg.rules)
    for (const std::string& source : cfg.sources)
      for (std::size_t n : cfg.widths)
        for (double th : cfg.thresholds)
          for (double dc : cfg.decays)
            for (double eta : cfg.learning_rates)
              cells.push_back({index++, rule, source, n, th, dc, eta});
  return cells;
}

BenchRow run_cell(const ExperimentConfig& cfg, const Cell& cell) {
  BenchRow row;
  row.cell_index = cell.index;
  row.rule = cell.rule;
  row.source = cell.source;
  row.n = cell.n;
  row.threshold = cell.threshold;
  row.decay = cell.decay;
  row.eta = cell.eta;
  row.epochs = cfg.epochs;

  LearningRuleConfig rule = default_rule_config(cell.rule);
  set_rule_learning_rate(rule, cell.eta);
  row.category = category_name(rule_category(rule));
  row.bio_inspired = rule_bio_inspired(rule);

  const SourceKind kind = source_kind_from_name(cell.source);
  const std::size_t source_idx = source_rank(cell.source);

  LifParams lif;
  lif.threshold = cell.threshold;
  lif.decay = cell.decay;

  const std::size_t seed_count = cfg.fast ? 1 : cfg.seeds.size();
  row.seed_count = seed_count;

  std::vector<double> acc, mse, mae, r2, wall;
  bool balanced = true;
  try {
    for (std::size_t si = 0; si < seed_count; ++si) {
      const std::uint64_t seed = cfg.seeds[si];
      const SplitRng seed_rng(seed);
      const LabeledDataset train_ds =
          make_dataset(default_class0(kind), default_class1(kind), cfg.count_per_class,
                       cfg.length, seed_rng.split(2 * source_idx).key());
      const LabeledDataset test_ds =
          make_dataset(default_class0(kind), default_class1(kind), cfg.count_per_class,
                       cfg.length, seed_rng.split(2 * source_idx + 1).key());

      TrainConfig tc;
      tc.epochs = cfg.epochs;
      tc.n = cell.n;
      tc.rule = rule;
      tc.lif = lif;
      tc.seed = seed;

      const auto t0 = std::chrono::steady_clock::now();
      const TrainResult trained = train(train_ds, tc);
      std::vector<int> preds, labels;
      preds.reserve(test_ds.size());
      for (const LabeledDataset::Item& item : test_ds.items) {
        preds.push_back(predict_with(trained.net, trained.calibration, item.seq));
        labels.push_back(item.label);
      }
      const EvalMetrics m = evaluate(preds, labels);
      const auto t1 = std::chrono::steady_clock::now();

      acc.push_back(m.accuracy_pct);
      mse.push_back(m.mse);
      mae.push_back(m.mae);
      r2.push_back(m.r2);
      balanced = balanced && m.balanced;
      wall.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    row.metrics.accuracy_pct = median(acc);
    row.metrics.mse = median(mse);
    row.metrics.mae = median(mae);
    row.metrics.r2 = median(r2);
    row.metrics.r2_defined = !std::isnan(row.metrics.r2);
    row.metrics.balanced = balanced;
    row.time_s = median(wall);
  } catch (const std::exception& e) {
    row.failed = true;
    row.error = e.what();
  }
  return row;
}

json row_to_json(const BenchRow& r) {
  json j;
  j["cell"] = r.cell_index;
  j["rule"] = r.rule;
  j["source"] = r.source;
  j["n"] = r.n;
  j["threshold"] = r.threshold;
  j["decay"] = r.decay;
  j["eta"] = r.eta;
  j["epochs"] = r.epochs;
  j["seed_count"] = r.seed_count;
  j["category"] = r.category;
  j["bio_inspired"] = r.bio_inspired;
  j["time_s"] = r.time_s;
  if (r.failed) {
    j["failed"] = true;
    j["error"] = r.error;
  } else {
    j["failed"] = false;
    j["accuracy_pct"] = r.metrics.accuracy_pct;
    j["mse"] = r.metrics.mse;
    j["mae"] = r.metrics.mae;
    if (r.metrics.r2_defined)
      j["r2"] = r.metrics.r2;
    else
      j["r2"] = nullptr;
    j["balanced"] = r.metrics.balanced;
  }
  return j;
}

BenchRow row_from_json(const json& j) {
  BenchRow r;
  r.cell_index = j.at("cell").get<std::size_t>();
  r.rule = j.at("rule").get<std::string>();
  r.source = j.at("source").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.threshold = j.at("threshold").get<double>();
  r.decay = j.at("decay").get<double>();
  r.eta = j.at("eta").get<double>();
  r.epochs = j.at("epochs").get<std::size_t>();
  r.seed_count = j.at("seed_count").get<std::size_t>();
  r.category = j.at("category").get<std::string>();
  r.bio_inspired = j.at("bio_inspired").get<bool>();
  r.time_s = j.at("time_s").get<double>();
  r.failed = j.at("failed").get<bool>();
  if (r.failed) {
    r.error = j.value("error", "");
  } else {
    r.metrics.accuracy_pct = j.at("accuracy_pct").get<double>();
    r.metrics.mse = j.at("mse").get<double>();
    r.metrics.mae = j.at("mae").get<double>();
    if (j.at("r2").is_null()) {
      r.metrics.r2 = std::numeric_limits<double>::quiet_NaN();
      r.metrics.r2_defined = false;
    } else {
      r.metrics.r2 = j.at("r2").get<double>();
      r.metrics.r2_defined = true;
    }
    r.metrics.balanced = j.at("balanced").get<bool>();
  }
  return r;
}

}  // namespace

std::size_t bench_thread_cap() {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPIKEBENCH_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = static_cast<std::size_t>(v);
  }
  return cap;
}

BenchmarkReport run_experiment(const ExperimentConfig& cfg,
                               const std::string& journal_path) {
  cfg.validate();
  const std::vector<Cell> cells = enumerate_cells(cfg);

  BenchmarkReport report;
  report.environment = environment_note();
  report.rows.resize(cells.size());

  // Resume: cells already journaled keep their recorded rows.
  std::vector<bool> done(cells.size(), false);
  if (!journal_path.empty()) {
    std::ifstream in(journal_path);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      const BenchRow r = row_from_json(json::parse(line));
      if (r.cell_index < cells.size()) {
        report.rows[r.cell_index] = r;
        done[r.cell_index] = true;
      }
    }
  }

  std::mutex journal_mutex;
  std::ofstream journal;
  if (!journal_path.empty()) journal.open(journal_path, std::ios::app);

  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::max<std::size_t>(1, std::min(bench_thread_cap(), std::max<std::size_t>(cells.size(), 1)));

  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      if (done[i]) continue;
      const BenchRow row = run_cell(cfg, cells[i]);
      report.rows[i] = row;
      if (journal.is_open()) {
        const std::lock_guard<std::mutex> lock(journal_mutex);
        journal << row_to_json(row).dump() << "\n";
        journal.flush();
      }
    }
  };

  if (workers <= 1 || cells.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  finalize_report(report);
  return report;
}

BenchmarkReport report_from_journal(const std::string& journal_path) {
  std::ifstream in(journal_path);
  if (!in) throw std::runtime_error("cannot open journal: " + journal_path);

  BenchmarkReport report;
  report.environment = environment_note();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    report.rows.push_back(row_from_json(json::parse(line)));
  }
  finalize_report(report);
  return report;
}

// ---------------------------------------------------------------------------
// Emitters
// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v, int decimals) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::vector<std::string> row_cells(const BenchRow& r) {
  return {r.category,
          r.rule,
          r.source,
          r.bio_inspired ? "yes" : "no",
          std::to_string(r.epochs),
          std::to_string(r.n),
          fmt(r.time_s, 2),
          fmt(r.metrics.accuracy_pct, 2),
          fmt(r.metrics.mse, 4),
          fmt(r.metrics.mae, 4),
          r.metrics.r2_defined ? fmt(r.metrics.r2, 4) : ""};
}

const char* kColumnNames[] = {"type",   "subtype", "dataset",      "bio_inspired",
                              "epochs", "n",       "time_s",       "accuracy_pct",
                              "mse",    "mae",     "r2"};

}  // namespace

ReportFormat report_format_from_name(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  if (name == "markdown") return ReportFormat::kMarkdown;
  throw std::invalid_argument("unknown report format: " + name);
}

void emit_report(const BenchmarkReport& report, ReportFormat format,
                 std::ostream& out) {
  switch (format) {
    case ReportFormat::kCsv: {
      for (std::size_t c = 0; c < 11; ++c) out << (c ? "," : "") << kColumnNames[c];
      out << "\n";
      for (const BenchRow& r : report.rows) {
        if (r.failed) continue;
        const std::vector<std::string> cells = row_cells(r);
        for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << cells[c];
        out << "\n";
      }
      break;
    }
    case ReportFormat::kMarkdown: {
      out << "|";
      for (const char* name : kColumnNames) out << " " << name << " |";
      out << "\n|";
      for (std::size_t c = 0; c < 11; ++c) out << " --- |";
      out << "\n";
      for (const BenchRow& r : report.rows) {
        if (r.failed) continue;
        out << "|";
        for (const std::string& cell : row_cells(r)) out << " " << cell << " |";
        out << "\n";
      }
      break;
    }
    case ReportFormat::kJson: {
      json j;
      j["version"] = 1;
      j["environment"] = report.environment;
      j["rows"] = json::array();
      for (const BenchRow& r : report.rows) {
        json row = row_to_json(r);
        row["best"] = r.best;
        j["rows"].push_back(std::move(row));
      }
      out << j.dump(2) << "\n";
      break;
    }
  }
}

void emit_report_file(const BenchmarkReport& report, ReportFormat format,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open report output: " + path);
  emit_report(report, format, out);
  if (!out) throw std::runtime_error("report write failed: " + path);
}

}  // namespace spikebench
