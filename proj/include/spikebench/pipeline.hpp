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
#include <string>
#include <vector>

#include "spikebench/learning.hpp"
#include "spikebench/network.hpp"
#include "spikebench/sources.hpp"

namespace spikebench {

struct TrainConfig {
  std::size_t epochs = 10;
  std::size_t n = 32;
  LearningRuleConfig rule = StdpCfg{};
  LifParams lif;
  double init_scale = 0.0;  // <= 0 selects default_init_scale(n)
  std::uint64_t seed = 0;
  double w_max = 5.0;

  void validate() const;
};

// Decision rule on normalized output LZC. `swapped` records that class 0 had
// the higher complexity mean during calibration, inverting the comparison.
struct Calibration {
  double threshold = 0.0;
  bool swapped = false;
  bool degenerate = false;
};

// Class-mean midpoint; class 1 is the higher-mean class.
double calibrate_lzc_threshold(const std::vector<double>& values0,
                               const std::vector<double>& values1);
Calibration calibrate_lzc(const std::vector<double>& values0,
                          const std::vector<double>& values1);

// Teacher raster per the class targets (label 1: fire at every step, label
// 0: one spike at step 0) plus rule-appropriate target spike times.
TeacherSignal make_teacher(const LearningRuleConfig& rule, int label, std::size_t n,
                           std::size_t steps, double dt, double tau_m);

struct TrainResult {
  Network net;
  Calibration calibration;
  double train_accuracy_pct = 0.0;
};

// Online training: per epoch and sample, encode -> forward -> rule delta ->
// clipped apply; BAL consumes each epoch as one pool, ANN-SNN conversion
// replaces the plasticity epochs. A final calibration pass fixes the LZC
// threshold on the training outputs.
TrainResult train(const LabeledDataset& dataset, const TrainConfig& cfg);

// encode -> forward -> decode -> normalized LZC.
double output_complexity(const Network& net, const BinarySequence& seq);

int predict(const Network& net, double threshold, const BinarySequence& seq);
int predict_with(const Network& net, const Calibration& calib,
                 const BinarySequence& seq);

struct EvalMetrics {
  double accuracy_pct = 0.0;
  double mse = 0.0;
  double mae = 0.0;
  double r2 = 0.0;
  bool r2_defined = true;
  bool balanced = false;
};

// Accuracy/MSE/MAE/R^2 of binary predictions. The binary identities
// (mse == mae == 1 - accuracy/100, and r2 == 1 - 4*mse under balance) are
// verified on every call.
EvalMetrics evaluate(const std::vector<int>& predictions,
                     const std::vector<int>& labels);

// One benchmark table row.
struct EvalReport {
  std::string rule;
  std::string source;
  std::size_t n = 0;
  std::size_t epochs = 0;
  double time_s = 0.0;
  EvalMetrics metrics;
};

// Model checkpoint: versioned binary header with n and LIF parameters, then
// row-major 64-bit weights, biases and the calibration.
void save_model(const std::string& path, const Network& net, const Calibration& calib);
struct LoadedModel {
  Network net;
  Calibration calibration;
};
LoadedModel load_model(const std::string& path);

}  // namespace spikebench
