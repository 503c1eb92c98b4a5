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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spikebench {

// Fixed-length bit string, the unit of classification input/output.
struct BinarySequence {
  std::vector<std::uint8_t> bits;

  BinarySequence() = default;
  explicit BinarySequence(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

  std::size_t size() const { return bits.size(); }
  bool empty() const { return bits.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits[i]; }
  std::uint8_t& operator[](std::size_t i) { return bits[i]; }

  bool operator==(const BinarySequence&) const = default;

  double mean() const {
    if (bits.empty()) return 0.0;
    std::size_t ones = 0;
    for (std::uint8_t b : bits) ones += b;
    return static_cast<double>(ones) / static_cast<double>(bits.size());
  }
};

// Parses a string of '0'/'1' characters; whitespace is skipped.
BinarySequence parse_bits(const std::string& text);
std::string format_bits(const BinarySequence& seq);

// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  bool same_shape(const Matrix& other) const {
    return rows == other.rows && cols == other.cols;
  }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }

  bool operator==(const Matrix&) const = default;
};

// Non-finite value produced where a finite one is required.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric divergence during training; carries where it happened.
class TrainingError : public std::runtime_error {
 public:
  TrainingError(const std::string& what, std::size_t epoch, std::size_t sample)
      : std::runtime_error(what), epoch(epoch), sample(sample) {}
  std::size_t epoch;
  std::size_t sample;
};

}  // namespace spikebench
