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

#include "spikebench/neuron.hpp"

#include <cmath>
#include <stdexcept>

namespace spikebench {

double LifParams::decay_factor() const {
  return decay ? *decay : std::exp(-dt / tau_m);
}

void LifParams::validate() const {
  if (!(tau_m > 0.0)) throw std::invalid_argument("tau_m must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(threshold > reset)) throw std::invalid_argument("threshold must exceed reset");
  const double d = decay_factor();
  if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("decay must be in [0,1]");
}

LifStepResult lif_step(const LifState& state, double z, const LifParams& params) {
  if (!std::isfinite(z)) throw NumericError("lif_step: non-finite input");
  const double d = params.decay_factor();

  LifStepResult r;
  r.state = state;
  r.state.t = state.t + params.dt;
  r.state.u = d * state.u + (1.0 - d) * z;
  r.u_pre = r.state.u;
  if (r.state.u >= params.threshold) {
    r.spiked = true;
    r.state.u = params.reset;
    r.state.last_spike_time = r.state.t;
  }
  return r;
}

double input_current(std::span<const double> weights, std::span<const double> x,
                     double bias) {
  if (weights.size() != x.size())
    throw std::invalid_argument("input_current: dimension mismatch");
  double acc = bias;
  for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * x[i];
  return acc;
}

std::size_t SpikeRaster::total_spikes() const {
  std::size_t c = 0;
  for (std::uint8_t s : spikes) c += s;
  return c;
}

std::size_t SpikeRaster::spike_count(std::size_t i) const {
  std::size_t c = 0;
  for (std::size_t t = 0; t < steps; ++t) c += spike(i, t);
  return c;
}

std::vector<double> SpikeRaster::spike_times(std::size_t i) const {
  std::vector<double> times;
  for (std::size_t t = 0; t < steps; ++t)
    if (spike(i, t)) times.push_back(static_cast<double>(t) * dt);
  return times;
}

SpikeRaster encode(const BinarySequence& seq, std::size_t n, double dt_ms) {
  if (n == 0) throw std::invalid_argument("encode: layer width must be > 0");
  if (seq.empty()) throw std::invalid_argument("encode: empty sequence");
  const std::size_t steps = (seq.size() + n - 1) / n;

  SpikeRaster raster(n, steps, dt_ms);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const std::size_t t = k / n;
    const std::size_t i = k % n;
    raster.set_spike(i, t, seq[k]);
    // Input rasters carry no membrane; mirror the drive in the trace.
    raster.set_potential(i, t, static_cast<double>(seq[k]));
  }
  return raster;
}

BinarySequence decode(const SpikeRaster& raster, std::size_t target_length) {
  if (raster.neurons == 0 || raster.steps == 0)
    throw std::invalid_argument("decode: empty raster");
  if (target_length > raster.neurons * raster.steps)
    throw std::invalid_argument("decode: target_length exceeds raster capacity");

  BinarySequence seq;
  seq.bits.resize(target_length);
  for (std::size_t k = 0; k < target_length; ++k)
    seq.bits[k] = raster.spike(k % raster.neurons, k / raster.neurons);
  return seq;
}

}  // namespace spikebench
