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
#include <vector>

#include "spikebench/core.hpp"

namespace spikebench {

enum class SourceKind { kBernoulli, kMarkov, kPoisson };

const char* source_kind_name(SourceKind kind);
SourceKind source_kind_from_name(const std::string& name);

// Parameters of one stochastic bit source.
struct SourceSpec {
  SourceKind kind = SourceKind::kBernoulli;

  // Bernoulli
  double p = 0.5;

  // Two-state Markov: P(1|0) = p01, P(0|1) = p10. When p01 + p10 = 0 the
  // stationary distribution is undefined and `initial_p1` must be given.
  double p01 = 0.0;
  double p10 = 0.0;
  std::optional<double> initial_p1;

  // Poisson: homogeneous rate [events/s] discretized to dt-wide bins.
  double rate = 0.0;
  double dt = 1e-3;

  static SourceSpec bernoulli(double p);
  static SourceSpec markov(double p01, double p10,
                           std::optional<double> initial_p1 = std::nullopt);
  static SourceSpec poisson(double rate_hz, double dt_s = 1e-3);

  // Per-bin spike probability q = 1 - exp(-rate*dt) of the Poisson
  // discretization. Only meaningful for kPoisson.
  double poisson_bin_probability() const;

  void validate() const;
  std::string describe() const;
};

BinarySequence gen_bernoulli(double p, std::size_t length, std::uint64_t seed);
BinarySequence gen_markov(double p01, double p10, std::size_t length, std::uint64_t seed,
                          std::optional<double> initial_p1 = std::nullopt);
BinarySequence gen_poisson(double rate_hz, double dt_s, std::size_t length,
                           std::uint64_t seed);
BinarySequence generate(const SourceSpec& spec, std::size_t length, std::uint64_t seed);

// Balanced two-class dataset. Regenerating with the same arguments yields a
// bit-identical dataset; per-item streams are split from the seed so they do
// not depend on dataset size or generation order.
struct LabeledDataset {
  struct Item {
    BinarySequence seq;
    int label = 0;
  };

  std::vector<Item> items;
  SourceSpec class0;
  SourceSpec class1;
  std::uint64_t seed = 0;

  std::size_t size() const { return items.size(); }
  bool balanced() const;
};

LabeledDataset make_dataset(const SourceSpec& class0, const SourceSpec& class1,
                            std::size_t count_per_class, std::size_t length,
                            std::uint64_t seed);

// Default two-class task per source family: a low-complexity parameterization
// (label 0) against a high-complexity one (label 1) of the same family.
SourceSpec default_class0(SourceKind kind);
SourceSpec default_class1(SourceKind kind);

}  // namespace spikebench
