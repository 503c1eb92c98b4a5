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

#include "spikebench/pipeline.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "spikebench/complexity.hpp"
#include "spikebench/rng.hpp"

namespace spikebench {

namespace {

constexpr char kModelMagic[8] = {'S', 'B', 'N', 'E', 'T', 'v', '0', '1'};

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Running per-class complexity means; gives reward-STDP its in-training
// decision threshold before the final calibration exists.
struct RunningCalibration {
  double sum0 = 0.0, sum1 = 0.0;
  std::size_t n0 = 0, n1 = 0;

  bool ready() const { return n0 > 0 && n1 > 0; }
  double threshold() const { return (sum0 / n0 + sum1 / n1) / 2.0; }
  bool swapped() const { return sum0 / n0 > sum1 / n1; }
  void add(double c, int label) {
    if (label == 1) {
      sum1 += c;
      ++n1;
    } else {
      sum0 += c;
      ++n0;
    }
  }
};

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!supported_width(n)) throw std::invalid_argument("n is not in the supported grid");
  if (!(w_max > 0.0)) throw std::invalid_argument("w_max must be > 0");
  lif.validate();
  validate_rule(rule);
}

double calibrate_lzc_threshold(const std::vector<double>& values0,
                               const std::vector<double>& values1) {
  return calibrate_lzc(values0, values1).threshold;
}

Calibration calibrate_lzc(const std::vector<double>& values0,
                          const std::vector<double>& values1) {
  require(!values0.empty() && !values1.empty(), "calibration lists must be nonempty");
  const double m0 = mean_of(values0);
  const double m1 = mean_of(values1);
  Calibration calib;
  calib.threshold = (m0 + m1) / 2.0;
  calib.swapped = m0 > m1;
  calib.degenerate = m0 == m1;
  return calib;
}

TeacherSignal make_teacher(const LearningRuleConfig& rule, int label, std::size_t n,
                           std::size_t steps, double dt, double tau_m) {
  require(label == 0 || label == 1, "label must be 0 or 1");
  require(n > 0 && steps > 0, "teacher shape must be nonempty");

  TeacherSignal teacher;
  teacher.teacher_raster = SpikeRaster(n, steps, dt);
  for (std::size_t i = 0; i < n; ++i) {
    if (label == 1) {
      for (std::size_t t = 0; t < steps; ++t) teacher.teacher_raster.set_spike(i, t, 1);
    } else {
      teacher.teacher_raster.set_spike(i, 0, 1);
    }
  }

  std::vector<std::vector<double>> times(n);
  if (std::holds_alternative<SpikePropCfg>(rule)) {
    // First-spike targets: fire immediately for class 1, stay silent (the
    // no-fire time T + tau_m) for class 0.
    const double target =
        label == 1 ? 0.0 : static_cast<double>(steps) * dt + tau_m;
    for (std::size_t i = 0; i < n; ++i) times[i] = {target};
  } else {
    for (std::size_t i = 0; i < n; ++i)
      times[i] = teacher.teacher_raster.spike_times(i);
  }
  teacher.target_times = std::move(times);
  return teacher;
}

double output_complexity(const Network& net, const BinarySequence& seq) {
  const SpikeRaster raster = encode(seq, net.n, net.params.dt);
  const ForwardTrace trace = forward(net, raster);
  return normalized_lzc(decode(trace.output, seq.size()));
}

int predict(const Network& net, double threshold, const BinarySequence& seq) {
  return classify_by_lzc(output_complexity(net, seq), threshold);
}

int predict_with(const Network& net, const Calibration& calib,
                 const BinarySequence& seq) {
  const int label = classify_by_lzc(output_complexity(net, seq), calib.threshold);
  return calib.swapped ? 1 - label : label;
}

namespace {

WeightDelta rule_delta(const LearningRuleConfig& rule, const ForwardTrace& trace,
                       int label, const Network& net, RunningCalibration& running) {
  const std::size_t T = trace.steps();

  if (const auto* c = std::get_if<HebbianCfg>(&rule)) return hebbian_update(trace, *c);
  if (const auto* c = std::get_if<StdpCfg>(&rule)) return stdp_update(trace, *c);
  if (const auto* c = std::get_if<SdspCfg>(&rule)) return sdsp_update(trace, *c);
  if (const auto* c = std::get_if<BpCfg>(&rule)) return bp_update(trace, label, net, *c);
  if (const auto* c = std::get_if<StbpCfg>(&rule))
    return stbp_update(trace, label, net, *c);
  if (const auto* c = std::get_if<TempotronCfg>(&rule))
    return tempotron_update(trace, label, *c);
  if (const auto* c = std::get_if<SpikePropCfg>(&rule)) {
    const TeacherSignal teacher =
        make_teacher(rule, label, net.n, T, trace.dt(), net.params.tau_m);
    return spikeprop_update(trace, teacher, net, *c);
  }
  if (const auto* c = std::get_if<ChronotronCfg>(&rule)) {
    const TeacherSignal teacher =
        make_teacher(rule, label, net.n, T, trace.dt(), net.params.tau_m);
    return chronotron_update(trace, teacher, net, *c);
  }
  if (const auto* c = std::get_if<ResumeCfg>(&rule)) {
    const TeacherSignal teacher =
        make_teacher(rule, label, net.n, T, trace.dt(), net.params.tau_m);
    return resume_update(trace, teacher, *c);
  }
  if (const auto* c = std::get_if<RewardStdpCfg>(&rule)) {
    const SpikeRaster& out = trace.output;
    const double c_norm = normalized_lzc(decode(out, out.neurons * out.steps));
    double reward = 0.0;
    if (running.ready()) {
      int pred = classify_by_lzc(c_norm, running.threshold());
      if (running.swapped()) pred = 1 - pred;
      reward = pred == label ? c->reward_map.correct : c->reward_map.incorrect;
    }
    running.add(c_norm, label);
    return reward_stdp_update(trace, reward, *c);
  }
  throw std::logic_error("rule_delta: unhandled rule");
}

}  // namespace

TrainResult train(const LabeledDataset& dataset, const TrainConfig& cfg) {
  cfg.validate();
  require(!dataset.items.empty(), "dataset must not be empty");
  require(dataset.balanced(), "dataset must be balanced");

  const std::size_t n = cfg.n;
  const double scale = cfg.init_scale > 0.0 ? cfg.init_scale : default_init_scale(n);

  Network net;
  if (const auto* ann = std::get_if<AnnSnnCfg>(&cfg.rule)) {
    net = ann_snn_convert(dataset, n, *ann);
    net.params = cfg.lif;
  } else {
    net = init_network(n, SplitRng(cfg.seed).split(1).key(), scale);
    net.params = cfg.lif;

    if (const auto* bal = std::get_if<BalCfg>(&cfg.rule)) {
      for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::vector<ForwardTrace> traces;
        std::vector<int> labels;
        traces.reserve(dataset.size());
        labels.reserve(dataset.size());
        for (const LabeledDataset::Item& item : dataset.items) {
          traces.push_back(forward(net, encode(item.seq, n, cfg.lif.dt)));
          labels.push_back(item.label);
        }
        const BalResult result = bal_update(traces, labels, *bal);
        if (!result.delta.all_finite())
          throw TrainingError("bal produced a non-finite delta", epoch, 0);
        apply_delta(net, result.delta, cfg.w_max);
      }
    } else {
      RunningCalibration running;
      for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (std::size_t s = 0; s < dataset.size(); ++s) {
          const LabeledDataset::Item& item = dataset.items[s];
          const ForwardTrace trace = forward(net, encode(item.seq, n, cfg.lif.dt));
          WeightDelta delta;
          try {
            delta = rule_delta(cfg.rule, trace, item.label, net, running);
          } catch (const NumericError& e) {
            throw TrainingError(e.what(), epoch, s);
          }
          if (!delta.all_finite())
            throw TrainingError("rule produced a non-finite delta", epoch, s);
          apply_delta(net, delta, cfg.w_max);
        }
      }
    }
  }

  // Calibration pass over the training outputs.
  std::vector<double> values0, values1;
  std::vector<double> c_norms(dataset.size());
  for (std::size_t s = 0; s < dataset.size(); ++s) {
    c_norms[s] = output_complexity(net, dataset.items[s].seq);
    (dataset.items[s].label == 1 ? values1 : values0).push_back(c_norms[s]);
  }

  TrainResult result;
  result.net = std::move(net);
  result.calibration = calibrate_lzc(values0, values1);

  std::size_t correct = 0;
  for (std::size_t s = 0; s < dataset.size(); ++s) {
    int pred = classify_by_lzc(c_norms[s], result.calibration.threshold);
    if (result.calibration.swapped) pred = 1 - pred;
    if (pred == dataset.items[s].label) ++correct;
  }
  result.train_accuracy_pct =
      100.0 * static_cast<double>(correct) / static_cast<double>(dataset.size());
  return result;
}

EvalMetrics evaluate(const std::vector<int>& predictions,
                     const std::vector<int>& labels) {
  require(!predictions.empty(), "evaluate: empty inputs");
  require(predictions.size() == labels.size(), "evaluate: size mismatch");

  const double count = static_cast<double>(labels.size());
  std::size_t errors = 0, ones = 0;
  double sq_sum = 0.0, abs_sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    require((predictions[i] == 0 || predictions[i] == 1) &&
                (labels[i] == 0 || labels[i] == 1),
            "evaluate: predictions and labels must be binary");
    const double diff = predictions[i] - labels[i];
    sq_sum += diff * diff;
    abs_sum += std::abs(diff);
    if (predictions[i] != labels[i]) ++errors;
    ones += static_cast<std::size_t>(labels[i]);
  }

  EvalMetrics m;
  m.accuracy_pct = 100.0 * (count - static_cast<double>(errors)) / count;
  m.mse = sq_sum / count;
  m.mae = abs_sum / count;
  m.balanced = 2 * ones == labels.size();

  const double label_mean = static_cast<double>(ones) / count;
  double ss_tot = 0.0;
  for (int l : labels) {
    const double d = l - label_mean;
    ss_tot += d * d;
  }
  if (ss_tot == 0.0) {
    m.r2 = std::numeric_limits<double>::quiet_NaN();
    m.r2_defined = false;
  } else {
    m.r2 = 1.0 - sq_sum / ss_tot;
  }

  // Identities of binary predictions, exact by construction.
  if (m.mse != m.mae || std::abs(m.mse - (1.0 - m.accuracy_pct / 100.0)) > 1e-12)
    throw std::logic_error("evaluate: binary metric identity violated");
  if (m.balanced && std::abs(m.r2 - (1.0 - 4.0 * m.mse)) > 1e-12)
    throw std::logic_error("evaluate: balanced-label r2 identity violated");
  return m;
}

namespace {

void write_doubles(std::ofstream& os, const double* data, std::size_t count) {
  os.write(reinterpret_cast<const char*>(data),
           static_cast<std::streamsize>(count * sizeof(double)));
}

void read_doubles(std::ifstream& is, double* data, std::size_t count) {
  is.read(reinterpret_cast<char*>(data),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (!is) throw std::runtime_error("model file truncated");
}

}  // namespace

void save_model(const std::string& path, const Network& net, const Calibration& calib) {
  net.validate();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open model file for writing: " + path);

  os.write(kModelMagic, sizeof(kModelMagic));
  const std::uint64_t n = net.n;
  os.write(reinterpret_cast<const char*>(&n), sizeof(n));

  const double has_decay = net.params.decay ? 1.0 : 0.0;
  const double decay_value = net.params.decay.value_or(0.0);
  const double header[6] = {net.params.tau_m, net.params.threshold, net.params.reset,
                            net.params.dt, has_decay, decay_value};
  write_doubles(os, header, 6);
  write_doubles(os, net.w_ih.data.data(), net.w_ih.data.size());
  write_doubles(os, net.w_ho.data.data(), net.w_ho.data.size());
  write_doubles(os, net.bias_h.data(), net.bias_h.size());
  write_doubles(os, net.bias_o.data(), net.bias_o.size());

  const double tail[2] = {calib.threshold, calib.swapped ? 1.0 : 0.0};
  write_doubles(os, tail, 2);
  if (!os) throw std::runtime_error("model write failed: " + path);
}

LoadedModel load_model(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open model file: " + path);

  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0)
    throw std::runtime_error("not a spikebench model file: " + path);

  std::uint64_t n = 0;
  is.read(reinterpret_cast<char*>(&n), sizeof(n));
  if (!is || n == 0 || n > 1 << 20) throw std::runtime_error("bad model width");

  double header[6];
  read_doubles(is, header, 6);

  LoadedModel model;
  Network& net = model.net;
  net.n = static_cast<std::size_t>(n);
  net.params.tau_m = header[0];
  net.params.threshold = header[1];
  net.params.reset = header[2];
  net.params.dt = header[3];
  if (header[4] != 0.0) net.params.decay = header[5];

  net.w_ih = Matrix(net.n, net.n);
  net.w_ho = Matrix(net.n, net.n);
  net.bias_h.assign(net.n, 0.0);
  net.bias_o.assign(net.n, 0.0);
  read_doubles(is, net.w_ih.data.data(), net.w_ih.data.size());
  read_doubles(is, net.w_ho.data.data(), net.w_ho.data.size());
  read_doubles(is, net.bias_h.data(), net.bias_h.size());
  read_doubles(is, net.bias_o.data(), net.bias_o.size());

  double tail[2];
  read_doubles(is, tail, 2);
  model.calibration.threshold = tail[0];
  model.calibration.swapped = tail[1] != 0.0;
  net.validate();
  return model;
}

}  // namespace spikebench
