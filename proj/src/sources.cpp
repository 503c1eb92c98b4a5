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

#include "spikebench/sources.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "spikebench/rng.hpp"

namespace spikebench {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool valid_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

// Shared per-bin draw so Poisson discretization is bit-identical to a
// Bernoulli stream with the derived probability.
BinarySequence bernoulli_bits(double p, std::size_t length, SplitRng rng) {
  BinarySequence seq;
  seq.bits.resize(length);
  for (std::size_t i = 0; i < length; ++i)
    seq.bits[i] = rng.next_double() < p ? 1 : 0;
  return seq;
}

}  // namespace

BinarySequence parse_bits(const std::string& text) {
  BinarySequence seq;
  seq.bits.reserve(text.size());
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '0')
      seq.bits.push_back(0);
    else if (c == '1')
      seq.bits.push_back(1);
    else
      throw std::invalid_argument(std::string("invalid bit character: ") + c);
  }
  return seq;
}

std::string format_bits(const BinarySequence& seq) {
  std::string out;
  out.reserve(seq.size());
  for (std::uint8_t b : seq.bits) out.push_back(b ? '1' : '0');
  return out;
}

const char* source_kind_name(SourceKind kind) {
  switch (kind) {
    case SourceKind::kBernoulli: return "bernoulli";
    case SourceKind::kMarkov: return "markov";
    case SourceKind::kPoisson: return "poisson";
  }
  return "unknown";
}

SourceKind source_kind_from_name(const std::string& name) {
  if (name == "bernoulli") return SourceKind::kBernoulli;
  if (name == "markov") return SourceKind::kMarkov;
  if (name == "poisson") return SourceKind::kPoisson;
  throw std::invalid_argument("unknown source kind: " + name);
}

SourceSpec SourceSpec::bernoulli(double p) {
  SourceSpec s;
  s.kind = SourceKind::kBernoulli;
  s.p = p;
  s.validate();
  return s;
}

SourceSpec SourceSpec::markov(double p01, double p10, std::optional<double> initial_p1) {
  SourceSpec s;
  s.kind = SourceKind::kMarkov;
  s.p01 = p01;
  s.p10 = p10;
  s.initial_p1 = initial_p1;
  s.validate();
  return s;
}

SourceSpec SourceSpec::poisson(double rate_hz, double dt_s) {
  SourceSpec s;
  s.kind = SourceKind::kPoisson;
  s.rate = rate_hz;
  s.dt = dt_s;
  s.validate();
  return s;
}

double SourceSpec::poisson_bin_probability() const {
  return -std::expm1(-rate * dt);
}

void SourceSpec::validate() const {
  switch (kind) {
    case SourceKind::kBernoulli:
      require(valid_probability(p), "bernoulli p must be in [0,1]");
      break;
    case SourceKind::kMarkov:
      require(valid_probability(p01) && valid_probability(p10),
              "markov transition probabilities must be in [0,1]");
      if (initial_p1) require(valid_probability(*initial_p1), "initial_p1 must be in [0,1]");
      require(p01 + p10 > 0.0 || initial_p1.has_value(),
              "markov chain with p01=p10=0 needs an initial distribution");
      break;
    case SourceKind::kPoisson:
      require(std::isfinite(rate) && rate >= 0.0, "poisson rate must be >= 0");
      require(std::isfinite(dt) && dt > 0.0, "poisson dt must be > 0");
      break;
  }
}

std::string SourceSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case SourceKind::kBernoulli: os << "bernoulli(p=" << p << ")"; break;
    case SourceKind::kMarkov: os << "markov(p01=" << p01 << ",p10=" << p10 << ")"; break;
    case SourceKind::kPoisson: os << "poisson(rate=" << rate << "Hz,dt=" << dt << "s)"; break;
  }
  return os.str();
}

BinarySequence gen_bernoulli(double p, std::size_t length, std::uint64_t seed) {
  require(valid_probability(p), "bernoulli p must be in [0,1]");
  require(length >= 1, "length must be >= 1");
  return bernoulli_bits(p, length, SplitRng(seed));
}

BinarySequence gen_markov(double p01, double p10, std::size_t length, std::uint64_t seed,
                          std::optional<double> initial_p1) {
  require(valid_probability(p01) && valid_probability(p10),
          "markov transition probabilities must be in [0,1]");
  require(length >= 1, "length must be >= 1");
  require(p01 + p10 > 0.0 || initial_p1.has_value(),
          "markov chain with p01=p10=0 needs an initial distribution");

  // First symbol: an explicit initial distribution wins; otherwise the
  // stationary distribution, which exists whenever the chain mixes.
  const double pi1 =
      initial_p1 ? *initial_p1 : p01 / (p01 + p10);

  SplitRng rng(seed);
  BinarySequence seq;
  seq.bits.resize(length);
  seq.bits[0] = rng.next_double() < pi1 ? 1 : 0;
  for (std::size_t i = 1; i < length; ++i) {
    const double u = rng.next_double();
    seq.bits[i] = seq.bits[i - 1] ? (u < p10 ? 0 : 1) : (u < p01 ? 1 : 0);
  }
  return seq;
}

BinarySequence gen_poisson(double rate_hz, double dt_s, std::size_t length,
                           std::uint64_t seed) {
  require(std::isfinite(rate_hz) && rate_hz >= 0.0, "poisson rate must be >= 0");
  require(std::isfinite(dt_s) && dt_s > 0.0, "poisson dt must be > 0");
  require(length >= 1, "length must be >= 1");
  const double q = -std::expm1(-rate_hz * dt_s);
  return bernoulli_bits(q, length, SplitRng(seed));
}

BinarySequence generate(const SourceSpec& spec, std::size_t length, std::uint64_t seed) {
  spec.validate();
  switch (spec.kind) {
    case SourceKind::kBernoulli: return gen_bernoulli(spec.p, length, seed);
    case SourceKind::kMarkov:
      return gen_markov(spec.p01, spec.p10, length, seed, spec.initial_p1);
    case SourceKind::kPoisson: return gen_poisson(spec.rate, spec.dt, length, seed);
  }
  throw std::invalid_argument("invalid source kind");
}

bool LabeledDataset::balanced() const {
  std::size_t ones = 0;
  for (const Item& it : items) ones += static_cast<std::size_t>(it.label);
  return 2 * ones == items.size();
}

LabeledDataset make_dataset(const SourceSpec& class0, const SourceSpec& class1,
                            std::size_t count_per_class, std::size_t length,
                            std::uint64_t seed) {
  class0.validate();
  class1.validate();
  require(count_per_class >= 1, "count_per_class must be >= 1");
  require(length >= 1, "length must be >= 1");

  const SplitRng root(seed);
  const SplitRng stream0 = root.split(0);
  const SplitRng stream1 = root.split(1);

  LabeledDataset ds;
  ds.class0 = class0;
  ds.class1 = class1;
  ds.seed = seed;
  ds.items.reserve(2 * count_per_class);
  for (std::size_t i = 0; i < count_per_class; ++i) {
    ds.items.push_back({generate(class0, length, stream0.split(i).key()), 0});
    ds.items.push_back({generate(class1, length, stream1.split(i).key()), 1});
  }

  // Deterministic Fisher-Yates shuffle on its own stream.
  SplitRng shuffle = root.split(2);
  for (std::size_t i = ds.items.size() - 1; i > 0; --i) {
    const std::size_t j = shuffle.next_below(i + 1);
    std::swap(ds.items[i], ds.items[j]);
  }
  return ds;
}

SourceSpec default_class0(SourceKind kind) {
  switch (kind) {
    case SourceKind::kBernoulli: return SourceSpec::bernoulli(0.1);
    case SourceKind::kMarkov: return SourceSpec::markov(0.05, 0.05);
    case SourceKind::kPoisson: return SourceSpec::poisson(50.0);
  }
  throw std::invalid_argument("invalid source kind");
}

SourceSpec default_class1(SourceKind kind) {
  switch (kind) {
    case SourceKind::kBernoulli: return SourceSpec::bernoulli(0.9);
    case SourceKind::kMarkov: return SourceSpec::markov(0.45, 0.45);
    case SourceKind::kPoisson: return SourceSpec::poisson(500.0);
  }
  throw std::invalid_argument("invalid source kind");
}

}  // namespace spikebench
