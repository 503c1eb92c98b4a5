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

#include "spikebench/learning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spikebench/complexity.hpp"
#include "spikebench/rng.hpp"

namespace spikebench {

namespace {

constexpr double kReadoutSharpness = 8.0;
constexpr double kReadoutCenter = 0.1;
constexpr double kStdpCutoffFactor = 5.0;
constexpr double kCrossingEpsilon = 1e-9;
constexpr double kRewardStdpWindow = 5.0;  // ms, matches the ReSuMe default
constexpr double kBalSquash = 10.0;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::size_t trace_width(const ForwardTrace& trace) {
  require(trace.input.neurons > 0 && trace.input.neurons == trace.hidden.neurons &&
              trace.input.neurons == trace.output.neurons,
          "trace layers must share one width");
  require(trace.input.steps == trace.hidden.steps &&
              trace.input.steps == trace.output.steps,
          "trace rasters must share the step count");
  return trace.input.neurons;
}

std::vector<std::size_t> spike_steps(const SpikeRaster& raster, std::size_t i) {
  std::vector<std::size_t> steps;
  for (std::size_t t = 0; t < raster.steps; ++t)
    if (raster.spike(i, t)) steps.push_back(t);
  return steps;
}

// Sum of exp(-|dt|/window) over all (pre, post) spike pairs, per synapse,
// computed through per-neuron smoothed spike fields.
Matrix window_correlation(const SpikeRaster& pre, const SpikeRaster& post,
                          double window) {
  const std::size_t n = pre.neurons;
  const std::size_t T = pre.steps;
  std::vector<double> lag(T);
  for (std::size_t l = 0; l < T; ++l)
    lag[l] = std::exp(-(static_cast<double>(l) * pre.dt) / window);

  Matrix corr(n, n);
  std::vector<double> field(T);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(field.begin(), field.end(), 0.0);
    bool any = false;
    for (std::size_t ts = 0; ts < T; ++ts) {
      if (!post.spike(i, ts)) continue;
      any = true;
      for (std::size_t t = 0; t < T; ++t)
        field[t] += lag[t > ts ? t - ts : ts - t];
    }
    if (!any) continue;
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < T; ++t)
        if (pre.spike(j, t)) acc += field[t];
      corr(i, j) = acc;
    }
  }
  return corr;
}

}  // namespace

// ---------------------------------------------------------------------------
// Rule plumbing
// ---------------------------------------------------------------------------

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names = {
      "hebbian",    "stdp",       "sdsp",   "bp",      "stbp",        "tempotron",
      "spikeprop",  "chronotron", "resume", "ann_snn", "reward_stdp", "bal"};
  return names;
}

const char* rule_name(const LearningRuleConfig& cfg) {
  return rule_names()[cfg.index()].c_str();
}

LearningRuleConfig default_rule_config(const std::string& name) {
  if (name == "hebbian") return HebbianCfg{};
  if (name == "stdp") return StdpCfg{};
  if (name == "sdsp") return SdspCfg{};
  if (name == "bp") return BpCfg{};
  if (name == "stbp") return StbpCfg{};
  if (name == "tempotron") return TempotronCfg{};
  if (name == "spikeprop") return SpikePropCfg{};
  if (name == "chronotron") return ChronotronCfg{};
  if (name == "resume") return ResumeCfg{};
  if (name == "ann_snn") return AnnSnnCfg{};
  if (name == "reward_stdp") return RewardStdpCfg{};
  if (name == "bal") return BalCfg{};
  throw std::invalid_argument("unknown learning rule: " + name);
}

void set_rule_learning_rate(LearningRuleConfig& cfg, double eta) {
  std::visit(
      [eta](auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, HebbianCfg>) {
          c.eta = eta;
        } else if constexpr (std::is_same_v<T, StdpCfg>) {
          // Keep the default depression/potentiation ratio.
          c.a_minus = eta * (StdpCfg{}.a_minus / StdpCfg{}.a_plus);
          c.a_plus = eta;
        } else if constexpr (std::is_same_v<T, SdspCfg>) {
          c.a = eta;
        } else if constexpr (std::is_same_v<T, AnnSnnCfg>) {
          c.ann_eta = eta;
        } else {
          c.eta = eta;
        }
      },
      cfg);
}

RuleCategory rule_category(const LearningRuleConfig& cfg) {
  switch (cfg.index()) {
    case 0:
    case 1:
    case 2: return RuleCategory::kUnsupervised;
    case 3:
    case 4:
    case 5:
    case 6:
    case 7:
    case 8: return RuleCategory::kSupervised;
    default: return RuleCategory::kHybrid;
  }
}

SupervisionKind rule_supervision(const LearningRuleConfig& cfg) {
  switch (cfg.index()) {
    case 0:
    case 1:
    case 2: return SupervisionKind::kNone;
    case 3:
    case 4:
    case 5: return SupervisionKind::kLabel;
    case 6:
    case 7:
    case 8: return SupervisionKind::kTeacher;
    case 9: return SupervisionKind::kConversion;
    case 10: return SupervisionKind::kReward;
    default: return SupervisionKind::kPool;
  }
}

bool rule_bio_inspired(const LearningRuleConfig& cfg) {
  switch (cfg.index()) {
    case 3:   // bp
    case 4:   // stbp
    case 9:   // ann_snn
    case 10:  // reward_stdp
      return false;
    default: return true;
  }
}

void validate_rule(const LearningRuleConfig& cfg) {
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, HebbianCfg>) {
          require(c.eta > 0.0, "hebbian eta must be > 0");
        } else if constexpr (std::is_same_v<T, StdpCfg>) {
          require(c.a_plus >= 0.0 && c.a_minus >= 0.0, "stdp amplitudes must be >= 0");
          require(c.tau_plus > 0.0 && c.tau_minus > 0.0,
                  "stdp time constants must be > 0");
        } else if constexpr (std::is_same_v<T, SdspCfg>) {
          require(c.a >= 0.0, "sdsp amplitude must be >= 0");
        } else if constexpr (std::is_same_v<T, BpCfg> || std::is_same_v<T, StbpCfg>) {
          require(c.eta > 0.0, "eta must be > 0");
          require(c.surrogate_beta > 0.0, "surrogate_beta must be > 0");
        } else if constexpr (std::is_same_v<T, TempotronCfg>) {
          require(c.eta > 0.0, "tempotron eta must be > 0");
          require(c.tau_s_kernel > 0.0 && c.tau_m_kernel > c.tau_s_kernel,
                  "tempotron kernel needs tau_m > tau_s > 0");
        } else if constexpr (std::is_same_v<T, SpikePropCfg> ||
                             std::is_same_v<T, ChronotronCfg>) {
          require(c.eta > 0.0, "eta must be > 0");
        } else if constexpr (std::is_same_v<T, ResumeCfg>) {
          require(c.eta > 0.0, "resume eta must be > 0");
          require(c.teacher_window > 0.0, "teacher_window must be > 0");
        } else if constexpr (std::is_same_v<T, AnnSnnCfg>) {
          require(c.tau_syn > 0.0, "tau_syn must be > 0");
          require(c.ann_epochs >= 1, "ann_epochs must be >= 1");
          require(c.ann_eta > 0.0, "ann_eta must be > 0");
        } else if constexpr (std::is_same_v<T, RewardStdpCfg>) {
          require(c.eta > 0.0, "reward_stdp eta must be > 0");
        } else if constexpr (std::is_same_v<T, BalCfg>) {
          require(c.eta > 0.0, "bal eta must be > 0");
          require(c.pool_fraction > 0.0 && c.pool_fraction <= 1.0,
                  "pool_fraction must be in (0,1]");
          require(c.mi_bins >= 2, "mi_bins must be >= 2");
        }
      },
      cfg);
}

// ---------------------------------------------------------------------------
// WeightDelta
// ---------------------------------------------------------------------------

WeightDelta WeightDelta::zeros(std::size_t n) {
  WeightDelta d;
  d.d_ih = Matrix(n, n);
  d.d_ho = Matrix(n, n);
  return d;
}

bool WeightDelta::is_zero() const {
  auto zero = [](const Matrix& m) {
    for (double v : m.data)
      if (v != 0.0) return false;
    return true;
  };
  return zero(d_ih) && zero(d_ho);
}

double WeightDelta::max_abs() const {
  double m = 0.0;
  for (double v : d_ih.data) m = std::max(m, std::abs(v));
  for (double v : d_ho.data) m = std::max(m, std::abs(v));
  return m;
}

void apply_delta(Network& net, const WeightDelta& delta, double w_max) {
  require(delta.d_ih.same_shape(net.w_ih) && delta.d_ho.same_shape(net.w_ho),
          "delta shape does not match network");
  require(w_max > 0.0, "w_max must be > 0");
  for (std::size_t k = 0; k < net.w_ih.data.size(); ++k)
    net.w_ih.data[k] = std::clamp(net.w_ih.data[k] + delta.d_ih.data[k], -w_max, w_max);
  for (std::size_t k = 0; k < net.w_ho.data.size(); ++k)
    net.w_ho.data[k] = std::clamp(net.w_ho.data[k] + delta.d_ho.data[k], -w_max, w_max);
}

// ---------------------------------------------------------------------------
// Unsupervised rules
// ---------------------------------------------------------------------------

namespace {

// Coincidence counts per synapse, pre spikes along columns.
void add_coincidences(const SpikeRaster& pre, const SpikeRaster& post, double gain,
                      Matrix& out) {
  std::vector<std::size_t> active_pre, active_post;
  for (std::size_t t = 0; t < pre.steps; ++t) {
    active_pre.clear();
    active_post.clear();
    for (std::size_t j = 0; j < pre.neurons; ++j)
      if (pre.spike(j, t)) active_pre.push_back(j);
    if (active_pre.empty()) continue;
    for (std::size_t i = 0; i < post.neurons; ++i)
      if (post.spike(i, t)) active_post.push_back(i);
    for (std::size_t i : active_post)
      for (std::size_t j : active_pre) out(i, j) += gain;
  }
}

}  // namespace

WeightDelta hebbian_update(const ForwardTrace& trace, const HebbianCfg& cfg) {
  const std::size_t n = trace_width(trace);
  WeightDelta delta = WeightDelta::zeros(n);
  add_coincidences(trace.input, trace.hidden, cfg.eta, delta.d_ih);
  add_coincidences(trace.hidden, trace.output, cfg.eta, delta.d_ho);
  return delta;
}

namespace {

void stdp_layer(const SpikeRaster& pre, const SpikeRaster& post, const StdpCfg& cfg,
                Matrix& out) {
  const std::size_t n = pre.neurons;
  const std::size_t T = pre.steps;
  const double dt = pre.dt;
  const double cutoff = kStdpCutoffFactor * std::max(cfg.tau_plus, cfg.tau_minus);
  const std::size_t max_lag =
      std::min(T, static_cast<std::size_t>(std::floor(cutoff / dt + 1e-9)));

  // Pairs land on the step grid, so the two exponentials reduce to lag
  // tables. Lag 0 (simultaneous spikes) contributes nothing.
  std::vector<double> pot(max_lag + 1, 0.0), dep(max_lag + 1, 0.0);
  for (std::size_t l = 1; l <= max_lag; ++l) {
    const double ms = static_cast<double>(l) * dt;
    pot[l] = cfg.a_plus * std::exp(-ms / cfg.tau_plus);
    dep[l] = cfg.a_minus * std::exp(-ms / cfg.tau_minus);
  }

  std::vector<std::vector<std::size_t>> pre_steps(n), post_steps(n);
  for (std::size_t j = 0; j < n; ++j) pre_steps[j] = spike_steps(pre, j);
  for (std::size_t i = 0; i < n; ++i) post_steps[i] = spike_steps(post, i);

  for (std::size_t i = 0; i < n; ++i) {
    if (post_steps[i].empty()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (pre_steps[j].empty()) continue;
      double acc = 0.0;
      for (std::size_t tp : pre_steps[j]) {
        for (std::size_t tq : post_steps[i]) {
          if (tq > tp) {
            const std::size_t l = tq - tp;
            if (l <= max_lag) acc += pot[l];
          } else if (tp > tq) {
            const std::size_t l = tp - tq;
            if (l <= max_lag) acc -= dep[l];
          }
        }
      }
      out(i, j) += acc;
    }
  }
}

}  // namespace

WeightDelta stdp_update(const ForwardTrace& trace, const StdpCfg& cfg) {
  const std::size_t n = trace_width(trace);
  WeightDelta delta = WeightDelta::zeros(n);
  stdp_layer(trace.input, trace.hidden, cfg, delta.d_ih);
  stdp_layer(trace.hidden, trace.output, cfg, delta.d_ho);
  return delta;
}

WeightDelta sdsp_update(const ForwardTrace& trace, const SdspCfg& cfg) {
  const std::size_t n = trace_width(trace);
  WeightDelta delta = WeightDelta::zeros(n);

  auto layer = [&](const SpikeRaster& pre, const SpikeRaster& post, Matrix& out) {
    for (std::size_t i = 0; i < n; ++i) {
      const double post_count = static_cast<double>(post.spike_count(i));
      for (std::size_t j = 0; j < n; ++j) {
        const double pre_count = static_cast<double>(pre.spike_count(j));
        out(i, j) = cfg.a * (pre_count - post_count);
      }
    }
  };
  layer(trace.input, trace.hidden, delta.d_ih);
  layer(trace.hidden, trace.output, delta.d_ho);
  return delta;
}

// ---------------------------------------------------------------------------
// Rate-loss backpropagation (BP / STBP)
// ---------------------------------------------------------------------------

double fast_sigmoid_surrogate(double u, double threshold, double beta) {
  const double a = 1.0 + beta * std::abs(u - threshold);
  return beta / (a * a);
}

double rate_readout(double rate) {
  const double lo = logistic(kReadoutSharpness * (0.0 - kReadoutCenter));
  const double hi = logistic(kReadoutSharpness * (1.0 - kReadoutCenter));
  return (logistic(kReadoutSharpness * (rate - kReadoutCenter)) - lo) / (hi - lo);
}

double rate_readout_deriv(double rate) {
  const double lo = logistic(kReadoutSharpness * (0.0 - kReadoutCenter));
  const double hi = logistic(kReadoutSharpness * (1.0 - kReadoutCenter));
  const double s = logistic(kReadoutSharpness * (rate - kReadoutCenter));
  return kReadoutSharpness * s * (1.0 - s) / (hi - lo);
}

ActivationGrid grid_from_trace(const ForwardTrace& trace) {
  const std::size_t n = trace_width(trace);
  const std::size_t T = trace.steps();

  ActivationGrid g;
  g.n = n;
  g.steps = T;
  g.act_in = Matrix(n, T);
  g.act_h = Matrix(n, T);
  g.act_o = Matrix(n, T);
  g.u_h = Matrix(n, T);
  g.u_o = Matrix(n, T);
  g.carry_h = Matrix(n, T);
  g.carry_o = Matrix(n, T);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < T; ++t) {
      g.act_in(i, t) = trace.input.spike(i, t);
      g.act_h(i, t) = trace.hidden.spike(i, t);
      g.act_o(i, t) = trace.output.spike(i, t);
      g.u_h(i, t) = trace.hidden.potential(i, t);
      g.u_o(i, t) = trace.output.potential(i, t);
      // Reset detaches the carried membrane state.
      g.carry_h(i, t) = trace.hidden.spike(i, t) ? 0.0 : 1.0;
      g.carry_o(i, t) = trace.output.spike(i, t) ? 0.0 : 1.0;
    }
  }
  return g;
}

WeightDelta rate_loss_gradient_delta(const ActivationGrid& grid, int label,
                                     const Network& net, double eta, double beta,
                                     bool temporal) {
  const std::size_t n = grid.n;
  const std::size_t T = grid.steps;
  require(net.n == n, "grid width does not match network");
  require(label == 0 || label == 1, "label must be 0 or 1");

  const double d = net.params.decay_factor();
  const double theta = net.params.threshold;
  const double gain = 1.0 - d;

  const double mean_o =
      std::accumulate(grid.act_o.data.begin(), grid.act_o.data.end(), 0.0) /
      static_cast<double>(n * T);
  const double yhat = rate_readout(mean_o);
  const double err = yhat - static_cast<double>(label);

  WeightDelta delta = WeightDelta::zeros(n);
  if (err == 0.0) return delta;  // correct saturated output: exactly no update

  const double dscale =
      err * rate_readout_deriv(mean_o) / static_cast<double>(n * T);

  // Output layer adjoints, backward in time.
  Matrix lam_o(n, T);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = T; t-- > 0;) {
      double lam = dscale * fast_sigmoid_surrogate(grid.u_o(i, t), theta, beta);
      if (temporal && t + 1 < T) lam += lam_o(i, t + 1) * d * grid.carry_o(i, t);
      lam_o(i, t) = lam;
    }
  }

  // Credit reaching hidden spikes through w_ho.
  Matrix dS_h(n, T);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double li = lam_o(i, t) * gain;
      if (li == 0.0) continue;
      const double* row = &net.w_ho.data[i * n];
      for (std::size_t j = 0; j < n; ++j) dS_h(j, t) += li * row[j];
    }
  }

  Matrix lam_h(n, T);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t t = T; t-- > 0;) {
      double lam = dS_h(j, t) * fast_sigmoid_surrogate(grid.u_h(j, t), theta, beta);
      if (temporal && t + 1 < T) lam += lam_h(j, t + 1) * d * grid.carry_h(j, t);
      lam_h(j, t) = lam;
    }
  }

  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double li = lam_o(i, t) * gain;
      if (li == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j)
        delta.d_ho(i, j) += descent_delta(li * grid.act_h(j, t), eta);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double lj = lam_h(j, t) * gain;
      if (lj == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k)
        delta.d_ih(j, k) += descent_delta(lj * grid.act_in(k, t), eta);
    }
  }

  if (!delta.all_finite()) throw NumericError("rate-loss gradient is not finite");
  return delta;
}

WeightDelta bp_update(const ForwardTrace& trace, int label, const Network& net,
                      const BpCfg& cfg) {
  return rate_loss_gradient_delta(grid_from_trace(trace), label, net, cfg.eta,
                                  cfg.surrogate_beta, /*temporal=*/false);
}

WeightDelta stbp_update(const ForwardTrace& trace, int label, const Network& net,
                        const StbpCfg& cfg) {
  return rate_loss_gradient_delta(grid_from_trace(trace), label, net, cfg.eta,
                                  cfg.surrogate_beta, /*temporal=*/true);
}

// ---------------------------------------------------------------------------
// Tempotron
// ---------------------------------------------------------------------------

double tempotron_kernel_peak_time(double tau_m, double tau_s) {
  require(tau_s > 0.0 && tau_m > tau_s, "kernel needs tau_m > tau_s > 0");
  return tau_m * tau_s / (tau_m - tau_s) * std::log(tau_m / tau_s);
}

double tempotron_kernel(double s, double tau_m, double tau_s) {
  if (s < 0.0) return 0.0;
  const double peak = tempotron_kernel_peak_time(tau_m, tau_s);
  const double vmax = std::exp(-peak / tau_m) - std::exp(-peak / tau_s);
  return (std::exp(-s / tau_m) - std::exp(-s / tau_s)) / vmax;
}

WeightDelta tempotron_update(const ForwardTrace& trace, int label,
                             const TempotronCfg& cfg) {
  validate_rule(LearningRuleConfig{cfg});
  require(label == 0 || label == 1, "label must be 0 or 1");
  const std::size_t n = trace_width(trace);
  const std::size_t T = trace.steps();
  const double dt = trace.dt();

  WeightDelta delta = WeightDelta::zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<std::size_t> fired = spike_steps(trace.output, i);
    const bool spiked = !fired.empty();
    if ((label == 1) == spiked) continue;  // decision already correct

    double t_f;
    if (spiked) {
      t_f = static_cast<double>(fired.front()) * dt;
    } else {
      std::size_t peak_step = 0;
      for (std::size_t t = 1; t < T; ++t)
        if (trace.output.potential(i, t) > trace.output.potential(i, peak_step))
          peak_step = t;
      t_f = static_cast<double>(peak_step) * dt;
    }
    const double sign = spiked ? -1.0 : 1.0;

    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t tp = 0; tp < T; ++tp) {
        if (!trace.hidden.spike(j, tp)) continue;
        acc += tempotron_kernel(t_f - static_cast<double>(tp) * dt,
                                cfg.tau_m_kernel, cfg.tau_s_kernel);
      }
      delta.d_ho(i, j) += sign * cfg.eta * acc;
    }
  }
  return delta;
}

// ---------------------------------------------------------------------------
// SpikeProp / Chronotron
// ---------------------------------------------------------------------------

namespace {

// dU_i(t_star)/dw_ho(i, .) accumulated from the step after neuron i's
// previous reset. Presynaptic activity is the hidden spike plane.
std::vector<double> afferent_sensitivity(const ForwardTrace& trace, const Network& net,
                                         std::size_t i, std::size_t t_star) {
  const std::size_t n = net.n;
  const double d = net.params.decay_factor();
  const double gain = 1.0 - d;

  std::size_t s0 = 0;
  for (std::size_t t = t_star; t > 0; --t) {
    if (trace.output.spike(i, t - 1)) {
      s0 = t;
      break;
    }
  }
  std::vector<double> e(n, 0.0);
  for (std::size_t s = s0; s <= t_star; ++s)
    for (std::size_t j = 0; j < n; ++j)
      e[j] = e[j] * d + gain * trace.hidden.spike(j, s);
  return e;
}

// Discrete dU/dt at a crossing, from the post-reset value of the previous
// step to the pre-reset value at t_star.
double crossing_slope(const ForwardTrace& trace, const Network& net, std::size_t i,
                      std::size_t t_star) {
  double prev = 0.0;
  if (t_star > 0)
    prev = trace.output.spike(i, t_star - 1) ? net.params.reset
                                             : trace.output.potential(i, t_star - 1);
  return (trace.output.potential(i, t_star) - prev) / trace.dt();
}

std::size_t peak_potential_step(const ForwardTrace& trace, std::size_t i) {
  std::size_t peak = 0;
  for (std::size_t t = 1; t < trace.steps(); ++t)
    if (trace.output.potential(i, t) > trace.output.potential(i, peak)) peak = t;
  return peak;
}

// dt_actual/dw via the threshold-crossing linearization; falls back to the
// raw potential gradient direction (unit slope) when the crossing is too
// flat or the neuron never fired.
std::vector<double> spike_time_sensitivity(const ForwardTrace& trace,
                                           const Network& net, std::size_t i,
                                           std::size_t step, bool crossing,
                                           WeightDelta& diag) {
  std::vector<double> e = afferent_sensitivity(trace, net, i, step);
  double slope = 1.0;
  if (crossing) {
    slope = crossing_slope(trace, net, i, step);
    if (!(slope > kCrossingEpsilon)) {
      ++diag.singular_crossings;
      slope = 1.0;
    }
  }
  for (double& v : e) v = -v / slope;
  return e;
}

}  // namespace

WeightDelta spikeprop_update(const ForwardTrace& trace, const TeacherSignal& teacher,
                             const Network& net, const SpikePropCfg& cfg) {
  const std::size_t n = trace_width(trace);
  require(net.n == n, "network width does not match trace");
  require(teacher.target_times.has_value() && teacher.target_times->size() == n,
          "spikeprop needs a target first-spike time per output neuron");

  const double t_end = static_cast<double>(trace.steps()) * trace.dt();
  WeightDelta delta = WeightDelta::zeros(n);

  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double>& targets = (*teacher.target_times)[i];
    require(!targets.empty(), "spikeprop target list must not be empty");
    const double t_target = targets.front();

    const std::vector<std::size_t> fired = spike_steps(trace.output, i);
    double t_actual;
    std::vector<double> dt_dw;
    if (!fired.empty()) {
      t_actual = static_cast<double>(fired.front()) * trace.dt();
      if (t_actual == t_target) continue;
      dt_dw = spike_time_sensitivity(trace, net, i, fired.front(), true, delta);
    } else {
      t_actual = t_end + net.params.tau_m;
      if (t_actual == t_target) continue;
      ++delta.no_fire_fallbacks;
      dt_dw = spike_time_sensitivity(trace, net, i, peak_potential_step(trace, i),
                                     false, delta);
    }
    const double err = t_actual - t_target;
    for (std::size_t j = 0; j < n; ++j)
      delta.d_ho(i, j) += descent_delta(err * dt_dw[j], cfg.eta);
  }
  return delta;
}

double chronotron_loss(const std::vector<double>& actual_times,
                       const std::vector<double>& target_times, double t_end_ms,
                       double tau_m) {
  const std::size_t m = std::min(actual_times.size(), target_times.size());
  double loss = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double e = actual_times[k] - target_times[k];
    loss += e * e / 2.0;
  }
  for (std::size_t k = m; k < actual_times.size(); ++k) {
    const double e = actual_times[k] - t_end_ms;  // surplus spikes pushed out
    loss += e * e / 2.0;
  }
  for (std::size_t k = m; k < target_times.size(); ++k) {
    const double e = t_end_ms + tau_m - target_times[k];  // missing spikes
    loss += e * e / 2.0;
  }
  return loss;
}

WeightDelta chronotron_update(const ForwardTrace& trace, const TeacherSignal& teacher,
                              const Network& net, const ChronotronCfg& cfg) {
  const std::size_t n = trace_width(trace);
  require(net.n == n, "network width does not match trace");
  require(teacher.target_times.has_value() && teacher.target_times->size() == n,
          "chronotron needs a target spike list per output neuron");

  const double dt = trace.dt();
  const double t_end = static_cast<double>(trace.steps()) * dt;
  WeightDelta delta = WeightDelta::zeros(n);

  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double>& targets = (*teacher.target_times)[i];
    const std::vector<std::size_t> actual = spike_steps(trace.output, i);
    const std::size_t matched = std::min(actual.size(), targets.size());

    for (std::size_t k = 0; k < matched; ++k) {
      const double err = static_cast<double>(actual[k]) * dt - targets[k];
      if (err == 0.0) continue;
      const std::vector<double> dt_dw =
          spike_time_sensitivity(trace, net, i, actual[k], true, delta);
      for (std::size_t j = 0; j < n; ++j)
        delta.d_ho(i, j) += descent_delta(err * dt_dw[j], cfg.eta);
    }
    for (std::size_t k = matched; k < actual.size(); ++k) {
      const double err = static_cast<double>(actual[k]) * dt - t_end;
      if (err == 0.0) continue;
      const std::vector<double> dt_dw =
          spike_time_sensitivity(trace, net, i, actual[k], true, delta);
      for (std::size_t j = 0; j < n; ++j)
        delta.d_ho(i, j) += descent_delta(err * dt_dw[j], cfg.eta);
    }
    if (matched < targets.size()) {
      ++delta.no_fire_fallbacks;
      const std::vector<double> dt_dw = spike_time_sensitivity(
          trace, net, i, peak_potential_step(trace, i), false, delta);
      for (std::size_t k = matched; k < targets.size(); ++k) {
        const double err = t_end + net.params.tau_m - targets[k];
        if (err == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j)
          delta.d_ho(i, j) += descent_delta(err * dt_dw[j], cfg.eta);
      }
    }
  }
  return delta;
}

// ---------------------------------------------------------------------------
// ReSuMe
// ---------------------------------------------------------------------------

WeightDelta resume_update(const ForwardTrace& trace, const TeacherSignal& teacher,
                          const ResumeCfg& cfg) {
  const std::size_t n = trace_width(trace);
  const std::size_t T = trace.steps();
  require(teacher.teacher_raster.neurons == n && teacher.teacher_raster.steps == T,
          "teacher raster must match the output raster shape");

  const double dt = trace.dt();
  std::vector<double> lag(T);
  for (std::size_t l = 0; l < T; ++l)
    lag[l] = std::exp(-(static_cast<double>(l) * dt) / cfg.teacher_window);

  WeightDelta delta = WeightDelta::zeros(n);
  std::vector<double> diff(T);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(diff.begin(), diff.end(), 0.0);
    for (std::size_t ts = 0; ts < T; ++ts) {
      const double s = static_cast<double>(teacher.teacher_raster.spike(i, ts)) -
                       static_cast<double>(trace.output.spike(i, ts));
      if (s == 0.0) continue;
      for (std::size_t t = 0; t < T; ++t)
        diff[t] += s * lag[t > ts ? t - ts : ts - t];
    }
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < T; ++t)
        if (trace.hidden.spike(j, t)) acc += diff[t];
      delta.d_ho(i, j) = cfg.eta * acc;
    }
  }
  return delta;
}

// ---------------------------------------------------------------------------
// ANN-SNN conversion
// ---------------------------------------------------------------------------

Network ann_snn_convert(const LabeledDataset& dataset, std::size_t n,
                        const AnnSnnCfg& cfg) {
  validate_rule(LearningRuleConfig{cfg});
  require(n >= 1, "width must be >= 1");
  require(!dataset.items.empty(), "dataset must not be empty");

  // Frame-averaged inputs: mean drive of each of the n input neurons.
  std::vector<std::vector<double>> inputs;
  inputs.reserve(dataset.items.size());
  for (const LabeledDataset::Item& item : dataset.items) {
    std::vector<double> x(n, 0.0);
    const std::size_t steps = (item.seq.size() + n - 1) / n;
    for (std::size_t k = 0; k < item.seq.size(); ++k) x[k % n] += item.seq[k];
    for (double& v : x) v /= static_cast<double>(steps);
    inputs.push_back(std::move(x));
  }

  SplitRng rng = SplitRng(dataset.seed).split(0x414e4e);  // ANN init stream
  const double scale = default_init_scale(n);
  Matrix w1(n, n), w2(n, n);
  std::vector<double> b1(n, 0.0), b2(n, 0.0);
  for (double& w : w1.data) w = rng.uniform(-scale, scale);
  for (double& w : w2.data) w = rng.uniform(-scale, scale);

  std::vector<double> h(n), o(n), delta_o(n), delta_h(n);
  for (std::size_t epoch = 0; epoch < cfg.ann_epochs; ++epoch) {
    for (std::size_t s = 0; s < dataset.items.size(); ++s) {
      const std::vector<double>& x = inputs[s];
      const double label = dataset.items[s].label;

      for (std::size_t i = 0; i < n; ++i) {
        double z = b1[i];
        for (std::size_t j = 0; j < n; ++j) z += w1(i, j) * x[j];
        h[i] = logistic(z);
      }
      double yhat = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double z = b2[i];
        for (std::size_t j = 0; j < n; ++j) z += w2(i, j) * h[j];
        o[i] = logistic(z);
        yhat += o[i];
      }
      yhat /= static_cast<double>(n);

      const double loss = (yhat - label) * (yhat - label) / 2.0;
      if (!std::isfinite(loss))
        throw NumericError("ann_snn_convert: ANN training diverged");

      const double dy = (yhat - label) / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) delta_o[i] = dy * o[i] * (1.0 - o[i]);
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += delta_o[i] * w2(i, j);
        delta_h[j] = acc * h[j] * (1.0 - h[j]);
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w2(i, j) -= cfg.ann_eta * delta_o[i] * h[j];
        b2[i] -= cfg.ann_eta * delta_o[i];
      }
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) w1(j, k) -= cfg.ann_eta * delta_h[j] * x[k];
        b1[j] -= cfg.ann_eta * delta_h[j];
      }
    }
  }

  // w_SNN = w_ANN / tau_syn, biases likewise.
  Network net;
  net.n = n;
  net.w_ih = std::move(w1);
  net.w_ho = std::move(w2);
  net.bias_h = std::move(b1);
  net.bias_o = std::move(b2);
  for (double& w : net.w_ih.data) w /= cfg.tau_syn;
  for (double& w : net.w_ho.data) w /= cfg.tau_syn;
  for (double& b : net.bias_h) b /= cfg.tau_syn;
  for (double& b : net.bias_o) b /= cfg.tau_syn;
  return net;
}

// ---------------------------------------------------------------------------
// Reward-modulated STDP
// ---------------------------------------------------------------------------

WeightDelta reward_stdp_update(const ForwardTrace& trace, double reward,
                               const RewardStdpCfg& cfg) {
  if (!std::isfinite(reward)) throw std::invalid_argument("reward must be finite");
  const std::size_t n = trace_width(trace);

  WeightDelta delta = WeightDelta::zeros(n);
  if (reward == 0.0) return delta;

  const double gain = cfg.eta * reward;
  const Matrix c_ih = window_correlation(trace.input, trace.hidden, kRewardStdpWindow);
  const Matrix c_ho = window_correlation(trace.hidden, trace.output, kRewardStdpWindow);
  for (std::size_t k = 0; k < c_ih.data.size(); ++k) delta.d_ih.data[k] = gain * c_ih.data[k];
  for (std::size_t k = 0; k < c_ho.data.size(); ++k) delta.d_ho.data[k] = gain * c_ho.data[k];
  return delta;
}

// ---------------------------------------------------------------------------
// Bio-inspired active learning
// ---------------------------------------------------------------------------

double binary_mutual_information(std::size_t c00, std::size_t c01, std::size_t c10,
                                 std::size_t c11) {
  const std::size_t total = c00 + c01 + c10 + c11;
  if (total == 0) return 0.0;
  const double inv = 1.0 / static_cast<double>(total);
  const double p[2][2] = {{c00 * inv, c01 * inv}, {c10 * inv, c11 * inv}};
  const double pre1 = p[1][0] + p[1][1];
  const double post1 = p[0][1] + p[1][1];
  const double pa[2] = {1.0 - pre1, pre1};
  const double pb[2] = {1.0 - post1, post1};
  if (pa[0] == 0.0 || pa[1] == 0.0 || pb[0] == 0.0 || pb[1] == 0.0) return 0.0;

  double mi = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      if (p[a][b] > 0.0) mi += p[a][b] * std::log2(p[a][b] / (pa[a] * pb[b]));
  return std::max(mi, 0.0);
}

namespace {

// Triangular margin uncertainty: confidence saturates once the normalized
// LZC is 1/kBalSquash away from the threshold.
double squashed_confidence(double c_norm, double threshold) {
  return std::clamp(0.5 + 0.5 * kBalSquash * (c_norm - threshold), 0.0, 1.0);
}

void add_mi_layer(const SpikeRaster& pre, const SpikeRaster& post, double gain,
                  Matrix& out) {
  const std::size_t n = pre.neurons;
  const std::size_t T = pre.steps;

  std::vector<std::size_t> pre_counts(n), post_counts(n);
  for (std::size_t j = 0; j < n; ++j) pre_counts[j] = pre.spike_count(j);
  for (std::size_t i = 0; i < n; ++i) post_counts[i] = post.spike_count(i);

  Matrix both(n, n);
  std::vector<std::size_t> active_pre, active_post;
  for (std::size_t t = 0; t < T; ++t) {
    active_pre.clear();
    active_post.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (pre.spike(j, t)) active_pre.push_back(j);
    if (active_pre.empty()) continue;
    for (std::size_t i = 0; i < n; ++i)
      if (post.spike(i, t)) active_post.push_back(i);
    for (std::size_t i : active_post)
      for (std::size_t j : active_pre) both(i, j) += 1.0;
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t c11 = static_cast<std::size_t>(both(i, j));
      const std::size_t c10 = pre_counts[j] - c11;
      const std::size_t c01 = post_counts[i] - c11;
      const std::size_t c00 = T - c11 - c10 - c01;
      out(i, j) += gain * binary_mutual_information(c00, c01, c10, c11);
    }
  }
}

}  // namespace

double bal_uncertainty(double c_norm, double threshold) {
  const double p = squashed_confidence(c_norm, threshold);
  return 1.0 - std::abs(2.0 * p - 1.0);
}

BalResult bal_update(const std::vector<ForwardTrace>& traces,
                     const std::vector<int>& labels, const BalCfg& cfg) {
  validate_rule(LearningRuleConfig{cfg});
  require(!traces.empty(), "bal pool must not be empty");
  require(traces.size() == labels.size(), "traces and labels must align");

  const std::size_t n = trace_width(traces.front());
  const std::size_t pool = traces.size();

  // Pool-internal calibration of the LZC margin.
  std::vector<double> c_norms(pool);
  double sum0 = 0.0, sum1 = 0.0;
  std::size_t n0 = 0, n1 = 0;
  for (std::size_t s = 0; s < pool; ++s) {
    require(trace_width(traces[s]) == n, "bal pool traces must share one width");
    const SpikeRaster& out = traces[s].output;
    c_norms[s] = normalized_lzc(decode(out, out.neurons * out.steps));
    if (labels[s] == 1) {
      sum1 += c_norms[s];
      ++n1;
    } else {
      sum0 += c_norms[s];
      ++n0;
    }
  }
  double thresholdv;
  if (n0 > 0 && n1 > 0)
    thresholdv = (sum0 / n0 + sum1 / n1) / 2.0;
  else
    thresholdv = (sum0 + sum1) / static_cast<double>(pool);

  std::vector<double> uncertainty(pool);
  for (std::size_t s = 0; s < pool; ++s)
    uncertainty[s] = bal_uncertainty(c_norms[s], thresholdv);

  std::vector<std::size_t> order(pool);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return uncertainty[a] > uncertainty[b];
  });
  const std::size_t take = std::min<std::size_t>(
      pool, std::max<std::size_t>(
                1, static_cast<std::size_t>(
                       std::ceil(cfg.pool_fraction * static_cast<double>(pool) - 1e-9))));

  BalResult result;
  result.selected.assign(order.begin(), order.begin() + take);
  result.delta = WeightDelta::zeros(n);

  double u_bar = 0.0;
  for (std::size_t s : result.selected) u_bar += uncertainty[s];
  u_bar /= static_cast<double>(take);

  const double sample_gain = 1.0 / static_cast<double>(take);
  Matrix mi_ih(n, n), mi_ho(n, n);
  for (std::size_t s : result.selected) {
    add_mi_layer(traces[s].input, traces[s].hidden, sample_gain, mi_ih);
    add_mi_layer(traces[s].hidden, traces[s].output, sample_gain, mi_ho);
  }

  const double gain = cfg.eta * u_bar;
  for (std::size_t k = 0; k < mi_ih.data.size(); ++k)
    result.delta.d_ih.data[k] = gain * mi_ih.data[k];
  for (std::size_t k = 0; k < mi_ho.data.size(); ++k)
    result.delta.d_ho.data[k] = gain * mi_ho.data[k];
  return result;
}

}  // namespace spikebench
