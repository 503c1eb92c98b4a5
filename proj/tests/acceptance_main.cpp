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

// Acceptance suite: one pass/fail line per criterion. Every tolerance is
// pinned here; run `acceptance --criterion <k>` for a single criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spikebench/bench.hpp"
#include "spikebench/complexity.hpp"
#include "spikebench/pipeline.hpp"
#include "test_util.hpp"

using namespace spikebench;

namespace {

int g_failures = 0;
int g_checks = 0;

#define ACHECK(cond, ...)                                   \
  do {                                                      \
    ++g_checks;                                             \
    if (!(cond)) {                                          \
      ++g_failures;                                         \
      std::printf("    FAILED CHECK [%s:%d] ", __FILE__, __LINE__); \
      std::printf(__VA_ARGS__);                             \
      std::printf("\n");                                    \
    }                                                       \
  } while (0)

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// -------------------------------------------------------------------------
// 1. LZ76 oracle equivalence, exhaustive over lengths 1..14.
// -------------------------------------------------------------------------
void criterion_1() {
  for (std::size_t len = 1; len <= 14; ++len) {
    for (std::uint64_t code = 0; code < (1ULL << len); ++code) {
      BinarySequence seq;
      seq.bits.resize(len);
      for (std::size_t i = 0; i < len; ++i) seq.bits[i] = (code >> i) & 1;
      const std::size_t fast = lz76_complexity(seq);
      const std::size_t brute = oracles::lz76_brute_force(seq);
      if (fast != brute) {
        ACHECK(false, "mismatch at len=%zu code=%llu: %zu vs %zu", len,
               static_cast<unsigned long long>(code), fast, brute);
        return;
      }
    }
  }
  ACHECK(true, "exhaustive sweep");
}

// -------------------------------------------------------------------------
// 2. Normalized LZC asymptotics.
// -------------------------------------------------------------------------
void criterion_2() {
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    sum += normalized_lzc(gen_bernoulli(0.5, 1024, 9000 + seed));
  const double mean = sum / 100.0;
  ACHECK(mean >= 0.8 && mean <= 1.2, "fair-coin mean LZC %.4f outside [0.8,1.2]", mean);

  for (std::uint8_t bit : {0, 1}) {
    const BinarySequence constant(std::vector<std::uint8_t>(1024, bit));
    const double c = normalized_lzc(constant);
    ACHECK(c == 0.01953125, "constant LZC %.10f != 0.01953125", c);
  }
}

// -------------------------------------------------------------------------
// 3. Metric identities and the published-table arithmetic.
// -------------------------------------------------------------------------
void criterion_3() {
  auto balanced_preds = [](int errors) {
    std::vector<int> labels(200), preds(200);
    for (int i = 0; i < 200; ++i) labels[i] = preds[i] = i % 2;
    for (int e = 0; e < errors; ++e) preds[e] = 1 - preds[e];
    return std::make_pair(preds, labels);
  };

  {
    const auto [preds, labels] = balanced_preds(2);
    const EvalMetrics m = evaluate(preds, labels);
    ACHECK(std::abs(m.accuracy_pct - 99.00) < 1e-12, "accuracy %.6f", m.accuracy_pct);
    ACHECK(std::abs(m.mse - 0.0100) < 1e-12, "mse %.6f", m.mse);
    ACHECK(std::abs(m.mae - 0.0100) < 1e-12, "mae %.6f", m.mae);
    ACHECK(std::abs(m.r2 - 0.9600) < 1e-12, "r2 %.6f", m.r2);
  }
  {
    const auto [preds, labels] = balanced_preds(20);
    const EvalMetrics m = evaluate(preds, labels);
    ACHECK(std::abs(m.accuracy_pct - 90.00) < 1e-12, "accuracy %.6f", m.accuracy_pct);
    ACHECK(std::abs(m.mse - 0.1000) < 1e-12, "mse %.6f", m.mse);
    ACHECK(std::abs(m.r2 - 0.6000) < 1e-12, "r2 %.6f", m.r2);
    // The published row reports 0.5998; the 2e-4 gap is the paper's
    // near-balance, inside the attributed 0.001 tolerance.
    ACHECK(std::abs(m.r2 - 0.5998) <= 0.001, "r2 %.6f vs published 0.5998", m.r2);
  }
  {
    const auto [preds, labels] = balanced_preds(0);
    const EvalMetrics m = evaluate(preds, labels);
    ACHECK(m.accuracy_pct == 100.0 && m.mse == 0.0 && m.mae == 0.0 && m.r2 == 1.0,
           "perfect row mismatch");
  }

  // Identities on randomized balanced reports.
  SplitRng rng(333);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> labels(200), preds(200);
    for (int i = 0; i < 200; ++i) {
      labels[i] = i % 2;
      preds[i] = rng.next_double() < 0.8 ? labels[i] : 1 - labels[i];
    }
    const EvalMetrics m = evaluate(preds, labels);
    ACHECK(m.mse == m.mae, "mse != mae");
    ACHECK(std::abs(m.mse - (1.0 - m.accuracy_pct / 100.0)) < 1e-12, "mse vs accuracy");
    ACHECK(std::abs(m.r2 - (1.0 - 4.0 * m.mse)) < 1e-12, "r2 vs mse");
  }
}

// -------------------------------------------------------------------------
// 4. Gradient fidelity against central finite differences.
// -------------------------------------------------------------------------
void criterion_4() {
  const double step = 1e-5;
  for (std::uint64_t instance = 0; instance < 20; ++instance) {
    const bool temporal = instance % 2 == 1;  // alternate bp / stbp
    const std::uint64_t seed = 5000 + instance;

    LifParams params;
    params.decay = temporal ? 0.5 : 0.3;
    params.threshold = 0.2;
    Network net = testutil::make_net(4, seed, 0.7, params);

    SplitRng rng(seed ^ 0xabcde);
    const std::size_t T = 4 + rng.next_below(3);  // T in {4,5,6}
    Matrix input(4, T);
    for (double& v : input.data) v = rng.next_double() < 0.5 ? 1.0 : 0.0;
    const int label = static_cast<int>(rng.next_below(2));
    const double beta = 5.0;

    const oracles::SoftForward soft = oracles::soft_forward(net, input, beta, temporal);
    const WeightDelta delta =
        rate_loss_gradient_delta(soft.grid, label, net, 1.0, beta, temporal);

    auto check_matrix = [&](Matrix& w, const Matrix& d, const char* name) {
      for (std::size_t k = 0; k < w.data.size(); ++k) {
        const double saved = w.data[k];
        w.data[k] = saved + step;
        const double up = oracles::soft_loss(net, input, label, beta, temporal);
        w.data[k] = saved - step;
        const double down = oracles::soft_loss(net, input, label, beta, temporal);
        w.data[k] = saved;

        const double fd = (up - down) / (2.0 * step);
        const double analytic = -d.data[k];
        if (std::abs(fd) > 1e-6) {
          const double rel = std::abs(analytic - fd) / std::abs(fd);
          ACHECK(rel <= 1e-4, "%s[%zu] rel err %.2e (instance %llu)", name, k, rel,
                 static_cast<unsigned long long>(instance));
        } else {
          ACHECK(std::abs(analytic - fd) <= 1e-8, "%s[%zu] abs err (instance %llu)",
                 name, k, static_cast<unsigned long long>(instance));
        }
      }
    };
    check_matrix(net.w_ho, delta.d_ho, "w_ho");
    check_matrix(net.w_ih, delta.d_ih, "w_ih");
  }
}

// -------------------------------------------------------------------------
// 5. Plasticity sign laws and closed forms.
// -------------------------------------------------------------------------
void criterion_5() {
  SplitRng rng(777);
  for (int pair = 0; pair < 1000; ++pair) {
    const std::size_t a = rng.next_below(40);
    std::size_t b = rng.next_below(40);
    if (a == b) b = (a + 1 + rng.next_below(38)) % 40;

    StdpCfg cfg;
    cfg.a_plus = rng.uniform(0.01, 1.0);
    cfg.a_minus = rng.uniform(0.01, 1.0);
    cfg.tau_plus = rng.uniform(8.0, 50.0);
    cfg.tau_minus = rng.uniform(8.0, 50.0);

    testutil::TraceBuilder tb(1, 40);
    tb.hidden_spike(0, a).output_spike(0, b);
    const double delta = stdp_update(tb.trace, cfg).d_ho(0, 0);
    if (b > a)
      ACHECK(delta > 0.0, "potentiation sign at pair %d", pair);
    else
      ACHECK(delta < 0.0, "depression sign at pair %d", pair);
  }

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ForwardTrace trace = testutil::random_trace(8, 16, 600 + seed);
    const double a = 0.03;
    const WeightDelta sdsp = sdsp_update(trace, SdspCfg{a});
    const WeightDelta hebb = hebbian_update(trace, HebbianCfg{0.02});
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 8; ++j) {
        const double sdsp_expected =
            a * (static_cast<double>(trace.hidden.spike_count(j)) -
                 static_cast<double>(trace.output.spike_count(i)));
        ACHECK(sdsp.d_ho(i, j) == sdsp_expected, "sdsp closed form");
        double coincidences = 0;
        for (std::size_t t = 0; t < 16; ++t)
          coincidences += trace.input.spike(j, t) * trace.hidden.spike(i, t);
        ACHECK(std::abs(hebb.d_ih(i, j) - 0.02 * coincidences) < 1e-15,
               "hebbian coincidence count");
      }
    }
  }
}

// -------------------------------------------------------------------------
// 6. Error-driven rules return exactly zero on matched outputs.
// -------------------------------------------------------------------------
void criterion_6() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SplitRng rng(40000 + seed);
    const std::size_t n = 2 + rng.next_below(5);
    const std::size_t T = 4 + rng.next_below(8);

    // Random activity, then force the output to a definite all-or-none
    // pattern matching the label.
    const int label = static_cast<int>(rng.next_below(2));
    testutil::TraceBuilder tb(n, T);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < T; ++t) {
        if (rng.next_double() < 0.4) tb.input_spike(i, t);
        if (rng.next_double() < 0.4) tb.hidden_spike(i, t);
        if (label == 1) tb.output_spike(i, t);
      }
    const ForwardTrace& trace = tb.trace;

    // Tempotron: every output neuron agrees with the label.
    ACHECK(tempotron_update(trace, label, TempotronCfg{}).is_zero(),
           "tempotron zero (seed %llu)", static_cast<unsigned long long>(seed));

    // ReSuMe: the teacher is the output itself.
    TeacherSignal echo;
    echo.teacher_raster = trace.output;
    ACHECK(resume_update(trace, echo, ResumeCfg{}).is_zero(), "resume zero");

    // SpikeProp / Chronotron: targets equal the actual spike times.
    LifParams params;
    params.decay = 0.5;
    params.threshold = 0.5;
    const Network net = testutil::make_net(n, seed, 0.3, params);
    TeacherSignal matched;
    matched.teacher_raster = trace.output;
    std::vector<std::vector<double>> first(n), all(n);
    for (std::size_t i = 0; i < n; ++i) {
      all[i] = trace.output.spike_times(i);
      const std::vector<double> times = trace.output.spike_times(i);
      first[i] = {times.empty() ? static_cast<double>(T) * 1.0 + params.tau_m
                                : times.front()};
    }
    matched.target_times = first;
    ACHECK(spikeprop_update(trace, matched, net, SpikePropCfg{}).is_zero(),
           "spikeprop zero");
    matched.target_times = all;
    ACHECK(chronotron_update(trace, matched, net, ChronotronCfg{}).is_zero(),
           "chronotron zero");

    // Reward-STDP through the correctness map: matched output, zero reward.
    const RewardStdpCfg rcfg;
    const double reward = rcfg.reward_map.correct;  // classification correct
    ACHECK(reward_stdp_update(trace, reward, rcfg).is_zero(), "reward_stdp zero");
  }

  // BP/STBP: saturated or silent networks whose readout equals the label.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SplitRng rng(41000 + seed);
    LifParams params;
    params.decay = 0.5;
    params.threshold = 0.5;
    Network net = testutil::make_net(4, seed, 0.1, params);
    const int label = static_cast<int>(rng.next_below(2));
    const double magnitude = rng.uniform(1.0, 3.0);
    for (double& w : net.w_ih.data) w = label ? magnitude : -magnitude;
    for (double& w : net.w_ho.data) w = label ? magnitude : -magnitude;
    const ForwardTrace trace =
        forward(net, testutil::random_raster(4, 4 + rng.next_below(5), 1.0, seed));
    const std::size_t expect = label ? trace.output.neurons * trace.output.steps : 0;
    ACHECK(trace.output.total_spikes() == expect, "saturation setup failed");
    ACHECK(bp_update(trace, label, net, BpCfg{}).is_zero(), "bp zero (seed %llu)",
           static_cast<unsigned long long>(seed));
    ACHECK(stbp_update(trace, label, net, StbpCfg{}).is_zero(), "stbp zero");
  }
}

// -------------------------------------------------------------------------
// 7. Desk-scale classification thresholds. Hyperparameters pinned here.
// -------------------------------------------------------------------------
struct DeskRun {
  const char* rule_name;
  double test_accuracy = 0.0;
};

DeskRun desk_run(const LearningRuleConfig& rule, SourceKind kind, std::size_t n,
                 std::uint64_t seed, LifParams lif) {
  const SplitRng rng(seed);
  const LabeledDataset train_ds = make_dataset(default_class0(kind), default_class1(kind),
                                               100, 1024, rng.split(0).key());
  const LabeledDataset test_ds = make_dataset(default_class0(kind), default_class1(kind),
                                              100, 1024, rng.split(1).key());
  TrainConfig cfg;
  cfg.rule = rule;
  cfg.n = n;
  cfg.epochs = 10;
  cfg.seed = seed;
  cfg.lif = lif;

  const TrainResult trained = train(train_ds, cfg);
  std::vector<int> preds, labels;
  for (const LabeledDataset::Item& item : test_ds.items) {
    preds.push_back(predict_with(trained.net, trained.calibration, item.seq));
    labels.push_back(item.label);
  }
  const EvalMetrics m = evaluate(preds, labels);
  return {rule_name(rule), m.accuracy_pct};
}

void criterion_7() {
  LifParams lif;
  lif.tau_m = 10.0;
  lif.threshold = 0.2;
  lif.decay = 0.1;

  const DeskRun stdp = desk_run(StdpCfg{}, SourceKind::kBernoulli, 32, 101, lif);
  std::printf("    stdp/bernoulli n=32: %.2f%%\n", stdp.test_accuracy);
  ACHECK(stdp.test_accuracy >= 95.0, "stdp accuracy %.2f < 95", stdp.test_accuracy);

  const DeskRun bp = desk_run(BpCfg{}, SourceKind::kBernoulli, 32, 102, lif);
  std::printf("    bp/bernoulli n=32: %.2f%%\n", bp.test_accuracy);
  ACHECK(bp.test_accuracy >= 95.0, "bp accuracy %.2f < 95", bp.test_accuracy);

  const DeskRun sdsp = desk_run(SdspCfg{}, SourceKind::kPoisson, 32, 103, lif);
  std::printf("    sdsp/poisson n=32: %.2f%%\n", sdsp.test_accuracy);
  ACHECK(sdsp.test_accuracy >= 85.0, "sdsp accuracy %.2f < 85", sdsp.test_accuracy);
}

// -------------------------------------------------------------------------
// 8. Relative wall-time ordering: tempotron < hebbian < bp.
// -------------------------------------------------------------------------
double timed_run(const LearningRuleConfig& rule, std::uint64_t seed) {
  LifParams lif;
  lif.tau_m = 10.0;
  lif.threshold = 0.2;
  lif.decay = 0.1;
  const SplitRng rng(seed);
  const LabeledDataset train_ds =
      make_dataset(default_class0(SourceKind::kBernoulli),
                   default_class1(SourceKind::kBernoulli), 100, 1024, rng.split(0).key());
  const LabeledDataset test_ds =
      make_dataset(default_class0(SourceKind::kBernoulli),
                   default_class1(SourceKind::kBernoulli), 100, 1024, rng.split(1).key());

  TrainConfig cfg;
  cfg.rule = rule;
  cfg.n = 128;
  cfg.epochs = 10;
  cfg.seed = seed;
  cfg.lif = lif;

  const double t0 = now_s();
  const TrainResult trained = train(train_ds, cfg);
  std::vector<int> preds, labels;
  for (const LabeledDataset::Item& item : test_ds.items) {
    preds.push_back(predict_with(trained.net, trained.calibration, item.seq));
    labels.push_back(item.label);
  }
  evaluate(preds, labels);
  return now_s() - t0;
}

void criterion_8() {
  const double t_tempotron = timed_run(TempotronCfg{}, 301);
  const double t_hebbian = timed_run(HebbianCfg{}, 301);
  const double t_bp = timed_run(BpCfg{}, 301);
  std::printf("    wall: tempotron %.3fs, hebbian %.3fs, bp %.3fs\n", t_tempotron,
              t_hebbian, t_bp);
  ACHECK(t_tempotron < t_hebbian, "tempotron %.3f !< hebbian %.3f", t_tempotron,
         t_hebbian);
  ACHECK(t_hebbian < t_bp, "hebbian %.3f !< bp %.3f", t_hebbian, t_bp);
}

// -------------------------------------------------------------------------
// 9. Round-trip and determinism.
// -------------------------------------------------------------------------
void criterion_9() {
  SplitRng rng(555);
  std::size_t trips = 0;
  for (std::size_t n : kLayerWidths) {
    for (int trial = 0; trial < 143; ++trial) {  // 7 * 143 = 1001 sequences
      const BinarySequence seq = gen_bernoulli(0.5, 1024, rng.next_u64());
      if (decode(encode(seq, n), 1024) != seq) {
        ACHECK(false, "round-trip failed at n=%zu", n);
        return;
      }
      ++trips;
    }
  }
  ACHECK(trips >= 1000, "only %zu round trips", trips);

  const LabeledDataset a = make_dataset(SourceSpec::markov(0.05, 0.05),
                                        SourceSpec::markov(0.45, 0.45), 25, 1024, 42);
  const LabeledDataset b = make_dataset(SourceSpec::markov(0.05, 0.05),
                                        SourceSpec::markov(0.45, 0.45), 25, 1024, 42);
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i)
    same = a.items[i].label == b.items[i].label && a.items[i].seq == b.items[i].seq;
  ACHECK(same, "make_dataset rerun differs");

  TrainConfig cfg;
  cfg.rule = StdpCfg{};
  cfg.n = 16;
  cfg.epochs = 3;
  cfg.seed = 7;
  cfg.lif.threshold = 0.5;
  const LabeledDataset ds = make_dataset(SourceSpec::bernoulli(0.1),
                                         SourceSpec::bernoulli(0.9), 20, 1024, 77);
  const TrainResult r1 = train(ds, cfg);
  const TrainResult r2 = train(ds, cfg);
  ACHECK(r1.net.w_ih == r2.net.w_ih && r1.net.w_ho == r2.net.w_ho,
         "train rerun weights differ");
  ACHECK(r1.calibration.threshold == r2.calibration.threshold,
         "train rerun threshold differs");
}

// -------------------------------------------------------------------------
// 10. Degeneracy control: identical-spec classes stay near chance.
// -------------------------------------------------------------------------
void criterion_10() {
  LifParams lif;
  lif.tau_m = 10.0;
  lif.threshold = 0.2;
  lif.decay = 0.1;

  for (const std::string& name : rule_names()) {
    const SplitRng rng(2026);
    const SourceSpec spec = SourceSpec::bernoulli(0.5);
    const LabeledDataset train_ds = make_dataset(spec, spec, 100, 1024, rng.split(0).key());
    const LabeledDataset test_ds = make_dataset(spec, spec, 100, 1024, rng.split(1).key());

    TrainConfig cfg;
    cfg.rule = default_rule_config(name);
    cfg.n = 32;
    cfg.epochs = 10;
    cfg.seed = 987;
    cfg.lif = lif;

    const TrainResult trained = train(train_ds, cfg);
    std::vector<int> preds, labels;
    for (const LabeledDataset::Item& item : test_ds.items) {
      preds.push_back(predict_with(trained.net, trained.calibration, item.seq));
      labels.push_back(item.label);
    }
    const EvalMetrics m = evaluate(preds, labels);
    std::printf("    %s: %.2f%%\n", name.c_str(), m.accuracy_pct);
    ACHECK(m.accuracy_pct >= 41.0 && m.accuracy_pct <= 59.0,
           "%s degenerate accuracy %.2f outside [41,59]", name.c_str(),
           m.accuracy_pct);
  }
}

struct Criterion {
  int id;
  const char* title;
  void (*fn)();
};

const Criterion kCriteria[] = {
    {1, "LZ76 oracle equivalence (exhaustive L=1..14)", criterion_1},
    {2, "normalized LZC asymptotics", criterion_2},
    {3, "metric identities and table arithmetic", criterion_3},
    {4, "BP/STBP gradient fidelity vs finite differences", criterion_4},
    {5, "plasticity sign laws and closed forms", criterion_5},
    {6, "error-driven zero property", criterion_6},
    {7, "desk-scale classification thresholds", criterion_7},
    {8, "relative wall-time ordering", criterion_8},
    {9, "round-trip and determinism", criterion_9},
    {10, "degeneracy control near chance", criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[i + 1]);

  int passed = 0, ran = 0;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    const int failures_before = g_failures;
    const double t0 = now_s();
    c.fn();
    const double dt = now_s() - t0;
    const bool ok = g_failures == failures_before;
    if (ok) ++passed;
    std::printf("[%2d/10] %s  %s  (%.1f s)\n", c.id, ok ? "PASS" : "FAIL", c.title, dt);
    std::fflush(stdout);
  }
  std::printf("ACCEPTANCE: %d/%d criteria passed (%d checks, %d failed)\n", passed,
              ran, g_checks, g_failures);
  return g_failures == 0 ? 0 : 1;
}
