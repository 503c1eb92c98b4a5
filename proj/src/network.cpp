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

#include "spikebench/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spikebench/rng.hpp"

namespace spikebench {

bool supported_width(std::size_t n) {
  return std::find(kLayerWidths.begin(), kLayerWidths.end(), n) != kLayerWidths.end();
}

void Network::validate() const {
  if (n == 0) throw std::invalid_argument("network width must be > 0");
  if (w_ih.rows != n || w_ih.cols != n || w_ho.rows != n || w_ho.cols != n)
    throw std::invalid_argument("weight matrices must be n x n");
  if (bias_h.size() != n || bias_o.size() != n)
    throw std::invalid_argument("bias vectors must have length n");
  if (!w_ih.all_finite() || !w_ho.all_finite())
    throw NumericError("network weights must be finite");
  params.validate();
}

double default_init_scale(std::size_t n) {
  return 0.5 / std::sqrt(static_cast<double>(n));
}

Network init_network(std::size_t n, std::uint64_t seed, double scale) {
  if (!supported_width(n))
    throw std::invalid_argument("init_network: width not in the supported grid");
  if (!(scale > 0.0)) throw std::invalid_argument("init_network: scale must be > 0");

  SplitRng rng(seed);
  SplitRng rng_ih = rng.split(0);
  SplitRng rng_ho = rng.split(1);

  Network net;
  net.n = n;
  net.w_ih = Matrix(n, n);
  net.w_ho = Matrix(n, n);
  net.bias_h.assign(n, 0.0);
  net.bias_o.assign(n, 0.0);
  for (double& w : net.w_ih.data) w = rng_ih.uniform(-scale, scale);
  for (double& w : net.w_ho.data) w = rng_ho.uniform(-scale, scale);
  return net;
}

ForwardTrace forward(const Network& net, const SpikeRaster& input) {
  net.validate();
  if (input.neurons != net.n)
    throw std::invalid_argument("forward: input raster width must equal n");

  const std::size_t n = net.n;
  const std::size_t T = input.steps;

  ForwardTrace trace;
  trace.input = input;
  trace.hidden = SpikeRaster(n, T, input.dt);
  trace.output = SpikeRaster(n, T, input.dt);
  trace.z_hidden = Matrix(n, T);
  trace.z_output = Matrix(n, T);

  std::vector<LifState> hidden(n), output(n);
  std::vector<double> hidden_spikes(n, 0.0);

  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      double z = net.bias_h[i];
      const double* row = &net.w_ih.data[i * n];
      for (std::size_t j = 0; j < n; ++j)
        if (input.spike(j, t)) z += row[j];
      trace.z_hidden(i, t) = z;

      const LifStepResult r = lif_step(hidden[i], z, net.params);
      hidden[i] = r.state;
      trace.hidden.set_potential(i, t, r.u_pre);
      trace.hidden.set_spike(i, t, r.spiked ? 1 : 0);
      hidden_spikes[i] = r.spiked ? 1.0 : 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double z = net.bias_o[i];
      const double* row = &net.w_ho.data[i * n];
      for (std::size_t j = 0; j < n; ++j) z += row[j] * hidden_spikes[j];
      trace.z_output(i, t) = z;

      const LifStepResult r = lif_step(output[i], z, net.params);
      output[i] = r.state;
      trace.output.set_potential(i, t, r.u_pre);
      trace.output.set_spike(i, t, r.spiked ? 1 : 0);
    }
  }
  return trace;
}

}  // namespace spikebench
