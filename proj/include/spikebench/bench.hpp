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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spikebench/pipeline.hpp"

namespace spikebench {

// Hyperparameter domains from the benchmark protocol.
extern const std::vector<double> kThresholdGrid;
extern const std::vector<double> kDecayGrid;
extern const std::vector<double> kLearningRateGrid;

// Grid sweep description. Values must come from the declared domains.
struct ExperimentConfig {
  std::vector<std::string> rules;
  std::vector<std::string> sources;
  std::vector<std::size_t> widths;
  std::vector<double> thresholds;
  std::vector<double> decays;
  std::vector<double> learning_rates;
  std::size_t epochs = 10;
  std::vector<std::uint64_t> seeds = {1};
  std::size_t count_per_class = 100;
  std::size_t length = 1024;
  bool fast = false;  // single seed instead of per-cell medians
  std::string out;

  void validate() const;
  std::size_t cell_count() const;
};

// First line `spikebench-config v1`, then one `key value...` row per grid
// axis or scalar.
ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(std::istream& in);

struct BenchRow {
  // Grid coordinates.
  std::size_t cell_index = 0;
  std::string rule;
  std::string source;
  std::size_t n = 0;
  double threshold = 0.0;
  double decay = 0.0;
  double eta = 0.0;
  std::size_t epochs = 0;
  std::size_t seed_count = 0;

  // Table columns.
  std::string category;      // unsupervised | supervised | hybrid
  bool bio_inspired = true;
  double time_s = 0.0;
  EvalMetrics metrics;

  bool failed = false;
  std::string error;
  bool best = false;  // argmax accuracy per (rule, source)
};

struct BenchmarkReport {
  std::vector<BenchRow> rows;
  std::string environment;
};

// Runs every grid cell over the seed list, aggregating per-cell medians
// (single seed in fast mode). A nonempty journal path makes the sweep
// resumable: completed cells are appended as JSON lines and skipped on
// rerun. Failing cells are recorded and never abort the sweep. The worker
// pool size is capped by SPIKEBENCH_THREADS.
BenchmarkReport run_experiment(const ExperimentConfig& cfg,
                               const std::string& journal_path = "");

BenchmarkReport report_from_journal(const std::string& journal_path);

enum class ReportFormat { kCsv, kJson, kMarkdown };
ReportFormat report_format_from_name(const std::string& name);

void emit_report(const BenchmarkReport& report, ReportFormat format,
                 std::ostream& out);
void emit_report_file(const BenchmarkReport& report, ReportFormat format,
                      const std::string& path);

// Worker pool cap from SPIKEBENCH_THREADS (defaults to hardware concurrency).
std::size_t bench_thread_cap();

}  // namespace spikebench
