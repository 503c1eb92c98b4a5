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
#include <span>
#include <vector>

#include "spikebench/core.hpp"

namespace spikebench {

// Leaky integrate-and-fire constants. The per-step leak factor is
// exp(-dt/tau_m) unless `decay` is set, in which case the explicit value
// wins. decay = 0 is the memoryless limit.
struct LifParams {
  double tau_m = 10.0;     // ms
  double threshold = 1.0;  // U_th
  double reset = 0.0;      // U_r
  double dt = 1.0;         // ms
  std::optional<double> decay;

  double decay_factor() const;
  void validate() const;
};

struct LifState {
  double u = 0.0;
  double t = 0.0;  // ms since trial start; advances by dt per step
  std::optional<double> last_spike_time;
};

struct LifStepResult {
  LifState state;
  double u_pre = 0.0;  // potential before any reset, the value rasters record
  bool spiked = false;
};

// One exponential-Euler step: u <- decay*u + (1-decay)*z, spike and reset on
// threshold crossing.
LifStepResult lif_step(const LifState& state, double z, const LifParams& params);

// I(t) = w.x + b
double input_current(std::span<const double> weights, std::span<const double> x,
                     double bias);

// Binary spike matrix (neurons x steps) with the per-step pre-reset
// potential trace.
struct SpikeRaster {
  std::size_t neurons = 0;
  std::size_t steps = 0;
  double dt = 1.0;  // ms
  std::vector<std::uint8_t> spikes;
  std::vector<double> potentials;

  SpikeRaster() = default;
  SpikeRaster(std::size_t n, std::size_t t, double dt_ms = 1.0)
      : neurons(n), steps(t), dt(dt_ms), spikes(n * t, 0), potentials(n * t, 0.0) {}

  std::uint8_t spike(std::size_t i, std::size_t t) const { return spikes[i * steps + t]; }
  void set_spike(std::size_t i, std::size_t t, std::uint8_t v) { spikes[i * steps + t] = v; }
  double potential(std::size_t i, std::size_t t) const { return potentials[i * steps + t]; }
  void set_potential(std::size_t i, std::size_t t, double v) { potentials[i * steps + t] = v; }

  std::size_t total_spikes() const;
  std::size_t spike_count(std::size_t i) const;
  // Spike times of neuron i in ms (step index * dt).
  std::vector<double> spike_times(std::size_t i) const;

  bool operator==(const SpikeRaster&) const = default;
};

// Splits the sequence into ceil(length/n) frames of n bits; frame t drives
// the n input neurons at step t. The tail frame is zero-padded.
SpikeRaster encode(const BinarySequence& seq, std::size_t n, double dt_ms = 1.0);

// Concatenates raster columns time-major back into a bit string truncated to
// target_length. Inverse of encode on the padded tail.
BinarySequence decode(const SpikeRaster& raster, std::size_t target_length);

}  // namespace spikebench
