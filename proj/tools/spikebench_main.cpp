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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spikebench/bench.hpp"
#include "spikebench/complexity.hpp"
#include "spikebench/pipeline.hpp"
#include "spikebench/rng.hpp"

namespace {

using namespace spikebench;

BinarySequence read_bits_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bits file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_bits(ss.str());
}

int cmd_complexity(const std::string& bits_path) {
  const BinarySequence seq = read_bits_file(bits_path);
  const ComplexityResult r = complexity_of(seq);
  std::cout << "n " << r.n << "\nc_raw " << r.c_raw << "\nc_norm " << r.c_norm << "\n";
  return 0;
}

int cmd_train(const std::string& rule, const std::string& source, std::size_t n,
              std::uint64_t seed, std::size_t epochs, std::size_t count_per_class,
              const std::string& save_path) {
  const SourceKind kind = source_kind_from_name(source);
  const SplitRng rng(seed);
  const LabeledDataset dataset = make_dataset(default_class0(kind), default_class1(kind),
                                              count_per_class, 1024, rng.split(0).key());

  TrainConfig cfg;
  cfg.rule = default_rule_config(rule);
  cfg.n = n;
  cfg.seed = seed;
  cfg.epochs = epochs;
  cfg.lif.threshold = 0.2;
  cfg.lif.tau_m = 10.0;
  cfg.lif.decay = 0.1;

  const TrainResult result = train(dataset, cfg);
  std::cout << "rule " << rule << "\nsource " << source << "\nn " << n << "\nepochs "
            << epochs << "\ntrain_accuracy_pct " << result.train_accuracy_pct
            << "\nlzc_threshold " << result.calibration.threshold << "\nswapped "
            << (result.calibration.swapped ? "yes" : "no") << "\n";
  if (!save_path.empty()) {
    save_model(save_path, result.net, result.calibration);
    std::cout << "saved " << save_path << "\n";
  }
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& bits_path) {
  const LoadedModel model = load_model(model_path);
  const BinarySequence seq = read_bits_file(bits_path);
  const double c = output_complexity(model.net, seq);
  const int label = predict_with(model.net, model.calibration, seq);
  std::cout << "c_norm " << c << "\nlabel " << label << "\n";
  return 0;
}

int cmd_bench_run(const std::string& config_path, bool fast,
                  const std::string& resume_path) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (fast) cfg.fast = true;

  const BenchmarkReport report = run_experiment(cfg, resume_path);
  std::size_t failed = 0;
  for (const BenchRow& r : report.rows) failed += r.failed ? 1 : 0;
  std::cout << "cells " << report.rows.size() << "\nfailed " << failed << "\n";
  if (!cfg.out.empty()) {
    emit_report_file(report, ReportFormat::kCsv, cfg.out);
    std::cout << "wrote " << cfg.out << "\n";
  }
  return 0;
}

int cmd_bench_report(const std::string& journal_path, const std::string& format,
                     const std::string& out_path) {
  const BenchmarkReport report = report_from_journal(journal_path);
  const ReportFormat fmt = report_format_from_name(format);
  if (out_path.empty())
    emit_report(report, fmt, std::cout);
  else
    emit_report_file(report, fmt, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SNN learning-rule benchmark with Lempel-Ziv classification"};
  app.require_subcommand(1);

  // complexity --bits <file>
  std::string bits_path;
  CLI::App* complexity = app.add_subcommand("complexity", "LZ76 complexity of a bit file");
  complexity->add_option("--bits", bits_path, "file of 0/1 characters")->required();

  // train --rule --source --n --seed [--epochs] [--count] [--save]
  std::string rule = "stdp", source = "bernoulli", save_path;
  std::size_t n = 32, epochs = 10, count_per_class = 100;
  std::uint64_t seed = 1;
  CLI::App* train_cmd = app.add_subcommand("train", "train one rule on one source");
  train_cmd->add_option("--rule", rule, "learning rule name")->required();
  train_cmd->add_option("--source", source, "bernoulli|markov|poisson")->required();
  train_cmd->add_option("--n", n, "layer width")->required();
  train_cmd->add_option("--seed", seed, "seed")->required();
  train_cmd->add_option("--epochs", epochs, "training epochs");
  train_cmd->add_option("--count", count_per_class, "samples per class");
  train_cmd->add_option("--save", save_path, "model checkpoint path");

  // predict --model --bits
  std::string model_path;
  CLI::App* predict_cmd = app.add_subcommand("predict", "classify a bit file");
  predict_cmd->add_option("--model", model_path, "model checkpoint")->required();
  predict_cmd->add_option("--bits", bits_path, "file of 0/1 characters")->required();

  // bench run|report
  CLI::App* bench = app.add_subcommand("bench", "experiment sweeps and reports");
  bench->require_subcommand(1);

  std::string config_path, resume_path;
  bool fast = false;
  CLI::App* bench_run = bench->add_subcommand("run", "run a config sweep");
  bench_run->add_option("--config", config_path, "experiment config file")->required();
  bench_run->add_flag("--fast", fast, "single-seed fast mode");
  bench_run->add_option("--resume", resume_path, "resumable journal file");

  std::string journal_path, format = "csv", out_path;
  CLI::App* bench_report = bench->add_subcommand("report", "render a journal");
  bench_report->add_option("--in", journal_path, "journal file")->required();
  bench_report->add_option("--format", format, "csv|json|markdown");
  bench_report->add_option("--out", out_path, "output file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (complexity->parsed()) return cmd_complexity(bits_path);
    if (train_cmd->parsed())
      return cmd_train(rule, source, n, seed, epochs, count_per_class, save_path);
    if (predict_cmd->parsed()) return cmd_predict(model_path, bits_path);
    if (bench->parsed()) {
      if (bench_run->parsed()) return cmd_bench_run(config_path, fast, resume_path);
      if (bench_report->parsed())
        return cmd_bench_report(journal_path, format, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
