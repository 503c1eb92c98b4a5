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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spikebench/core.hpp"
#include "spikebench/network.hpp"
#include "spikebench/sources.hpp"

namespace spikebench {

// ---------------------------------------------------------------------------
// Rule configurations
// ---------------------------------------------------------------------------

struct HebbianCfg {
  double eta = 0.01;
};

// Balanced default amplitudes: with all-to-all pairing over dense
// synchronous trains, any potentiation/depression asymmetry integrates into
// an unbounded drift that silences or saturates the network.
struct StdpCfg {
  double a_plus = 1e-5;
  double a_minus = 1e-5;
  double tau_plus = 20.0;   // ms
  double tau_minus = 20.0;  // ms
};

struct SdspCfg {
  double a = 1e-4;
};

struct BpCfg {
  double eta = 0.05;
  double surrogate_beta = 5.0;
};

struct StbpCfg {
  double eta = 0.05;
  double surrogate_beta = 5.0;
};

struct TempotronCfg {
  double eta = 0.05;
  double tau_m_kernel = 15.0;  // ms
  double tau_s_kernel = 3.75;  // ms, defaults to tau_m_kernel / 4
};

struct SpikePropCfg {
  double eta = 0.01;
};

struct ChronotronCfg {
  double eta = 0.01;
};

struct ResumeCfg {
  double eta = 0.01;
  double teacher_window = 5.0;  // ms
};

struct AnnSnnCfg {
  double tau_syn = 1.0;
  std::size_t ann_epochs = 10;
  double ann_eta = 0.5;
};

// Trial-level reward from classification outcome. The default maps a correct
// classification to zero reward (no update) and an error to -1, so the rule
// is error-driven like the other supervised paths; set `correct` to +1 for
// reinforce-on-correct behavior.
struct RewardMap {
  double correct = 0.0;
  double incorrect = -1.0;
};

struct RewardStdpCfg {
  double eta = 0.01;
  RewardMap reward_map;
};

struct BalCfg {
  double eta = 0.01;
  double pool_fraction = 0.5;
  int mi_bins = 2;  // reserved for continuous traces; binary spikes use 2
};

using LearningRuleConfig =
    std::variant<HebbianCfg, StdpCfg, SdspCfg, BpCfg, StbpCfg, TempotronCfg,
                 SpikePropCfg, ChronotronCfg, ResumeCfg, AnnSnnCfg, RewardStdpCfg,
                 BalCfg>;

enum class RuleCategory { kUnsupervised, kSupervised, kHybrid };
enum class SupervisionKind { kNone, kLabel, kTeacher, kConversion, kReward, kPool };

// Lowercase identifiers in table order: hebbian, stdp, sdsp, bp, stbp,
// tempotron, spikeprop, chronotron, resume, ann_snn, reward_stdp, bal.
const std::vector<std::string>& rule_names();
const char* rule_name(const LearningRuleConfig& cfg);
LearningRuleConfig default_rule_config(const std::string& name);
void set_rule_learning_rate(LearningRuleConfig& cfg, double eta);
RuleCategory rule_category(const LearningRuleConfig& cfg);
SupervisionKind rule_supervision(const LearningRuleConfig& cfg);
bool rule_bio_inspired(const LearningRuleConfig& cfg);
void validate_rule(const LearningRuleConfig& cfg);

// ---------------------------------------------------------------------------
// Shared update types
// ---------------------------------------------------------------------------

struct WeightDelta {
  Matrix d_ih;
  Matrix d_ho;
  // Diagnostics from the spike-time rules.
  std::size_t singular_crossings = 0;
  std::size_t no_fire_fallbacks = 0;

  static WeightDelta zeros(std::size_t n);
  bool all_finite() const { return d_ih.all_finite() && d_ho.all_finite(); }
  bool is_zero() const;
  double max_abs() const;
};

// Clip-after-update application shared by every rule.
void apply_delta(Network& net, const WeightDelta& delta, double w_max);

struct TeacherSignal {
  SpikeRaster teacher_raster;
  // Target spike times [ms] per output neuron; SpikeProp reads the first
  // entry, Chronotron matches the k-th actual spike to the k-th entry.
  std::optional<std::vector<std::vector<double>>> target_times;
};

// ---------------------------------------------------------------------------
// Unsupervised rules
// ---------------------------------------------------------------------------

WeightDelta hebbian_update(const ForwardTrace& trace, const HebbianCfg& cfg);
WeightDelta stdp_update(const ForwardTrace& trace, const StdpCfg& cfg);
WeightDelta sdsp_update(const ForwardTrace& trace, const SdspCfg& cfg);

// ---------------------------------------------------------------------------
// Gradient rules (rate-loss backpropagation with a surrogate spike
// derivative). BP backpropagates layer-to-layer only; STBP additionally
// carries credit across time through the membrane leak.
// ---------------------------------------------------------------------------

// Fast-sigmoid surrogate for the spike nonlinearity: beta/(1+beta|u-th|)^2.
double fast_sigmoid_surrogate(double u, double threshold, double beta);

// Logistic readout of the mean output rate, rescaled so that rates 0 and 1
// map to exactly 0.0 and 1.0 (a correct saturated output yields an exactly
// zero error term).
double rate_readout(double rate);
double rate_readout_deriv(double rate);

// Gradient-descent step: delta = -eta * grad.
inline double descent_delta(double grad, double eta) { return -eta * grad; }

// Activation planes the backprop engine runs over. Production traces fill
// these with binary spikes and reset masks; the gradient-check suite fills
// them from a smooth surrogate forward pass with unit masks.
struct ActivationGrid {
  std::size_t n = 0;
  std::size_t steps = 0;
  Matrix act_in, act_h, act_o;  // activation of each layer, n x T
  Matrix u_h, u_o;              // pre-reset potentials, n x T
  Matrix carry_h, carry_o;      // dU_{t+1}/dU_t factor before decay, n x T
};

ActivationGrid grid_from_trace(const ForwardTrace& trace);

// Gradient of E = (readout(mean output activation) - label)^2 / 2 through
// the unrolled grid. `temporal` enables the decay * carry credit path.
WeightDelta rate_loss_gradient_delta(const ActivationGrid& grid, int label,
                                     const Network& net, double eta, double beta,
                                     bool temporal);

WeightDelta bp_update(const ForwardTrace& trace, int label, const Network& net,
                      const BpCfg& cfg);
WeightDelta stbp_update(const ForwardTrace& trace, int label, const Network& net,
                        const StbpCfg& cfg);

// ---------------------------------------------------------------------------
// Spike-time rules
// ---------------------------------------------------------------------------

// Peak-normalized double-exponential kernel K(s) = V0(e^{-s/tau_m}-e^{-s/tau_s})
// for s >= 0, else 0. Requires tau_m > tau_s > 0.
double tempotron_kernel_peak_time(double tau_m, double tau_s);
double tempotron_kernel(double s, double tau_m, double tau_s);

// Error-driven: only misclassified trials update, +eta for a missed spike
// (label 1, silent output), -eta for a false one (label 0, spiking output).
WeightDelta tempotron_update(const ForwardTrace& trace, int label,
                             const TempotronCfg& cfg);

WeightDelta spikeprop_update(const ForwardTrace& trace, const TeacherSignal& teacher,
                             const Network& net, const SpikePropCfg& cfg);

WeightDelta chronotron_update(const ForwardTrace& trace, const TeacherSignal& teacher,
                              const Network& net, const ChronotronCfg& cfg);

// Chronotron squared spike-time error with the order-matching conventions
// (surplus actual spikes count toward T_ms, missing spikes toward
// T_ms + tau_m).
double chronotron_loss(const std::vector<double>& actual_times,
                       const std::vector<double>& target_times, double t_end_ms,
                       double tau_m);

WeightDelta resume_update(const ForwardTrace& trace, const TeacherSignal& teacher,
                          const ResumeCfg& cfg);

// ---------------------------------------------------------------------------
// Hybrid rules
// ---------------------------------------------------------------------------

// Trains a 3-layer logistic rate network on frame-averaged inputs with plain
// gradient descent, then maps every weight and bias by w / tau_syn. ANN
// initialization derives from dataset.seed, so conversion is deterministic.
Network ann_snn_convert(const LabeledDataset& dataset, std::size_t n,
                        const AnnSnnCfg& cfg);

WeightDelta reward_stdp_update(const ForwardTrace& trace, double reward,
                               const RewardStdpCfg& cfg);

// Plug-in mutual information [bits] of a 2x2 contingency table.
double binary_mutual_information(std::size_t c00, std::size_t c01, std::size_t c10,
                                 std::size_t c11);

// Triangular margin uncertainty 1 - |2p - 1| of the squashed LZC-margin
// confidence p; 0 once the margin saturates, 1 exactly at the threshold.
double bal_uncertainty(double c_norm, double threshold);

struct BalResult {
  WeightDelta delta;
  std::vector<std::size_t> selected;  // indices into the pool, for audit
};

// Uncertainty-weighted mutual-information update over the most uncertain
// ceil(pool_fraction * N) samples of the pool.
BalResult bal_update(const std::vector<ForwardTrace>& traces,
                     const std::vector<int>& labels, const BalCfg& cfg);

}  // namespace spikebench
