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

#include <array>
#include <cstdint>

#include "spikebench/core.hpp"
#include "spikebench/neuron.hpp"

namespace spikebench {

inline constexpr std::array<std::size_t, 7> kLayerWidths = {16,  32,  64, 128,
                                                            256, 512, 1024};
bool supported_width(std::size_t n);

// 3-layer spiking network: input, hidden, output, each of width n. Hidden
// and output layers share LIF parameters; the input layer is the encoded
// raster itself (a set input bit injects one potential unit of drive).
struct Network {
  std::size_t n = 0;
  Matrix w_ih;  // n x n, row i = afferents of hidden neuron i
  Matrix w_ho;  // n x n, row i = afferents of output neuron i
  std::vector<double> bias_h;
  std::vector<double> bias_o;
  LifParams params;

  void validate() const;
  bool operator==(const Network&) const = default;
};

// Weights i.i.d. uniform in [-scale, scale], zero biases. n must come from
// the supported width grid.
Network init_network(std::size_t n, std::uint64_t seed, double scale);

// Default init scale 0.5/sqrt(n), keeping early drive near threshold across
// the width grid.
double default_init_scale(std::size_t n);

// Full activity record of one forward pass: everything any plasticity rule
// reads (spikes, pre-reset potentials, per-step net inputs).
struct ForwardTrace {
  SpikeRaster input;
  SpikeRaster hidden;
  SpikeRaster output;
  Matrix z_hidden;  // n x T
  Matrix z_output;  // n x T

  std::size_t steps() const { return input.steps; }
  double dt() const { return input.dt; }
};

// Synchronous same-step propagation: within one dt, input spikes drive the
// hidden layer and the hidden spikes of the same step drive the output.
ForwardTrace forward(const Network& net, const SpikeRaster& input);

}  // namespace spikebench
