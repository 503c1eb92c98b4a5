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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "spikebench/neuron.hpp"
#include "spikebench/rng.hpp"
#include "spikebench/sources.hpp"

using namespace spikebench;

TEST_CASE("explicit decay wins over tau_m") {
  LifParams p;
  p.tau_m = 10.0;
  p.dt = 1.0;
  CHECK(p.decay_factor() == doctest::Approx(std::exp(-0.1)).epsilon(1e-15));
  p.decay = 0.05;
  CHECK(p.decay_factor() == 0.05);
  p.validate();
}

TEST_CASE("zero input is a fixed point") {
  LifParams params;
  LifState state;
  for (int t = 0; t < 10; ++t) {
    const LifStepResult r = lif_step(state, 0.0, params);
    CHECK(r.state.u == 0.0);
    CHECK_FALSE(r.spiked);
    state = r.state;
  }
}

TEST_CASE("sub-threshold drive converges to the closed form") {
  LifParams params;  // decay = e^{-0.1}, threshold 1
  const double d = params.decay_factor();
  const double z = 0.5;
  LifState state;
  double prev = 0.0;
  for (int t = 1; t <= 200; ++t) {
    const LifStepResult r = lif_step(state, z, params);
    state = r.state;
    const double closed = z * (1.0 - std::pow(d, t));
    CHECK(std::abs(state.u - closed) < 1e-10);
    CHECK(state.u > prev);   // monotone approach
    CHECK(state.u < z);      // never reaches the drive, never spikes
    CHECK_FALSE(r.spiked);
    prev = state.u;
  }
}

TEST_CASE("one-step crossing with decay one half") {
  LifParams params;
  params.decay = 0.5;
  params.threshold = 1.0;
  LifState state;
  const LifStepResult r = lif_step(state, 2.0, params);
  CHECK(r.u_pre == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.spiked);
  CHECK(r.state.u == params.reset);
  CHECK(r.state.last_spike_time.has_value());
  CHECK(*r.state.last_spike_time == params.dt);
}

TEST_CASE("reset is exact after every spike") {
  LifParams params;
  params.decay = 0.5;
  params.threshold = 0.3;
  params.reset = 0.0;
  SplitRng rng(5);
  LifState state;
  for (int t = 0; t < 500; ++t) {
    const LifStepResult r = lif_step(state, rng.uniform(0.0, 1.0), params);
    if (r.spiked) CHECK(r.state.u == params.reset);
    state = r.state;
  }
}

TEST_CASE("non-finite input raises a numeric error") {
  LifParams params;
  LifState state;
  CHECK_THROWS_AS(lif_step(state, std::numeric_limits<double>::infinity(), params),
                  NumericError);
}

TEST_CASE("input_current basics") {
  const std::vector<double> zero(4, 0.0), x = {1.0, 0.0};
  CHECK(input_current(zero, std::vector<double>(4, 0.7), 0.0) == 0.0);
  CHECK(input_current(std::vector<double>{1.0, 1.0}, x, 0.5) == 1.5);
  CHECK_THROWS_AS(input_current(zero, x, 0.0), std::invalid_argument);
}

TEST_CASE("input_current matches the scalar-loop oracle") {
  SplitRng rng(31);
  std::vector<double> w(128), x(128);
  for (double& v : w) v = rng.uniform(-2.0, 2.0);
  for (double& v : x) v = rng.uniform(-2.0, 2.0);
  const double bias = rng.uniform(-1.0, 1.0);
  CHECK(std::abs(input_current(w, x, bias) - oracles::naive_dot(w, x, bias)) < 1e-12);
}

TEST_CASE("encode shapes and zero input") {
  const BinarySequence zeros(std::vector<std::uint8_t>(1024, 0));
  const SpikeRaster r = encode(zeros, 128);
  CHECK(r.neurons == 128);
  CHECK(r.steps == 8);
  CHECK(r.total_spikes() == 0);
  CHECK_THROWS_AS(encode(zeros, 0), std::invalid_argument);
}

TEST_CASE("decode concatenates time-major") {
  SpikeRaster r(2, 2);
  r.set_spike(0, 0, 1);
  r.set_spike(1, 1, 1);
  CHECK(format_bits(decode(r, 4)) == "1001");
  CHECK_THROWS_AS(decode(r, 5), std::invalid_argument);
}

TEST_CASE("encode and decode round-trip over the width grid") {
  SplitRng rng(17);
  for (std::size_t n : {16, 32, 64, 128, 256, 512, 1024}) {
    for (int trial = 0; trial < 20; ++trial) {
      const BinarySequence seq = gen_bernoulli(0.4, 1024, rng.next_u64());
      CHECK(decode(encode(seq, n), 1024) == seq);
    }
  }
}

TEST_CASE("padding bits are dropped exactly") {
  const BinarySequence seq = gen_bernoulli(0.5, 100, 3);
  const SpikeRaster r = encode(seq, 16);  // 7 steps, 12 padded bits
  CHECK(r.steps == 7);
  CHECK(decode(r, 100) == seq);
}

TEST_CASE("raster spikes match threshold crossings of recorded potentials") {
  LifParams params;
  params.decay = 0.7;
  params.threshold = 0.4;
  SplitRng rng(23);
  SpikeRaster raster(1, 64);
  LifState state;
  for (std::size_t t = 0; t < 64; ++t) {
    const LifStepResult r = lif_step(state, rng.uniform(0.0, 1.0), params);
    raster.set_spike(0, t, r.spiked ? 1 : 0);
    raster.set_potential(0, t, r.u_pre);
    state = r.state;
  }
  CHECK(raster.total_spikes() > 0);
  for (std::size_t t = 0; t < 64; ++t)
    CHECK(raster.spike(0, t) == (raster.potential(0, t) >= params.threshold ? 1 : 0));
}
