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

#include <cstddef>

#include "spikebench/core.hpp"

namespace spikebench {

struct ComplexityResult {
  std::size_t c_raw = 0;  // LZ76 phrase count
  double c_norm = 0.0;    // (c_raw / n) * log2(n)
  std::size_t n = 0;
  int alpha = 2;
};

// LZ76 exhaustive-history phrase count. A phrase ends at the first position
// where the word built since the previous phrase stops being a substring of
// everything before its last symbol; the trailing (possibly reproducible)
// segment counts as one phrase.
std::size_t lz76_complexity(const BinarySequence& seq);

// Normalized complexity (c_raw / n) * log2(n); requires n >= 2. Tends to 1
// for random bits and to 0 for deterministic ones.
double normalized_lzc(const BinarySequence& seq);

ComplexityResult complexity_of(const BinarySequence& seq);

// High-complexity class is 1; ties go to 1.
int classify_by_lzc(double c_norm, double threshold);

}  // namespace spikebench
