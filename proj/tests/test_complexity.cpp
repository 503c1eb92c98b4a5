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

#include "oracles.hpp"
#include "spikebench/complexity.hpp"
#include "spikebench/rng.hpp"
#include "spikebench/sources.hpp"

using namespace spikebench;

TEST_CASE("single symbol is one phrase") {
  CHECK(lz76_complexity(parse_bits("0")) == 1);
  CHECK(lz76_complexity(parse_bits("1")) == 1);
}

TEST_CASE("constant run parses into two phrases") {
  CHECK(lz76_complexity(parse_bits("00000000")) == 2);
  CHECK(oracles::lz76_brute_force("00000000") == 2);
  for (std::size_t n = 2; n <= 64; ++n) {
    CHECK(lz76_complexity(BinarySequence(std::vector<std::uint8_t>(n, 1))) == 2);
  }
}

TEST_CASE("golden value from the brute-force parser") {
  const std::string s = "0001101001000101";
  CHECK(oracles::lz76_brute_force(s) == 6);
  CHECK(lz76_complexity(parse_bits(s)) == 6);
}

TEST_CASE("alternating sequence has three phrases from length 4") {
  for (std::size_t n = 4; n <= 40; ++n) {
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = i % 2;
    const BinarySequence seq{bits};
    CHECK(lz76_complexity(seq) == 3);
    CHECK(oracles::lz76_brute_force(seq) == 3);
  }
}

TEST_CASE("empty sequence is rejected") {
  CHECK_THROWS_AS(lz76_complexity(BinarySequence{}), std::invalid_argument);
}

TEST_CASE("oracle equivalence on every sequence up to length 10") {
  // The acceptance suite extends this sweep to length 14.
  for (std::size_t len = 1; len <= 10; ++len) {
    for (std::uint64_t code = 0; code < (1ULL << len); ++code) {
      BinarySequence seq;
      seq.bits.resize(len);
      for (std::size_t i = 0; i < len; ++i) seq.bits[i] = (code >> i) & 1;
      CHECK(lz76_complexity(seq) == oracles::lz76_brute_force(seq));
    }
  }
}

TEST_CASE("extension never decreases the phrase count and adds at most one") {
  SplitRng rng(7001);
  for (int trial = 0; trial < 20; ++trial) {
    BinarySequence seq;
    seq.bits.push_back(rng.next_below(2) ? 1 : 0);
    std::size_t prev = lz76_complexity(seq);
    for (int step = 0; step < 120; ++step) {
      seq.bits.push_back(rng.next_below(2) ? 1 : 0);
      const std::size_t cur = lz76_complexity(seq);
      CHECK(cur >= prev);
      CHECK(cur <= prev + 1);
      prev = cur;
    }
  }
}

TEST_CASE("normalized complexity of the constant 1024 sequence") {
  const BinarySequence seq(std::vector<std::uint8_t>(1024, 0));
  CHECK(normalized_lzc(seq) == doctest::Approx(0.01953125).epsilon(1e-15));
}

TEST_CASE("normalized complexity at n=2") {
  CHECK(normalized_lzc(parse_bits("01")) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("normalized complexity requires length 2") {
  CHECK_THROWS_AS(normalized_lzc(parse_bits("0")), std::invalid_argument);
}

TEST_CASE("fair-coin sequence lands near 1") {
  const BinarySequence seq = gen_bernoulli(0.5, 1024, 20260101);
  const double c = normalized_lzc(seq);
  CHECK(c > 0.8);
  CHECK(c < 1.2);
}

TEST_CASE("classification threshold semantics") {
  CHECK(classify_by_lzc(0.02, 0.5) == 0);
  CHECK(classify_by_lzc(0.98, 0.5) == 1);
  CHECK(classify_by_lzc(0.5, 0.5) == 1);  // tie goes to the high class
  CHECK_THROWS_AS(classify_by_lzc(0.5, std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}

TEST_CASE("complexity_of bundles the raw and normalized values") {
  const ComplexityResult r = complexity_of(parse_bits("0001101001000101"));
  CHECK(r.c_raw == 6);
  CHECK(r.n == 16);
  CHECK(r.alpha == 2);
  CHECK(r.c_norm == doctest::Approx(6.0 / 16.0 * 4.0).epsilon(1e-15));
}
