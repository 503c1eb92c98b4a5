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

#include "spikebench/complexity.hpp"

#include <cmath>
#include <stdexcept>

namespace spikebench {

std::size_t lz76_complexity(const BinarySequence& seq) {
  const std::size_t n = seq.size();
  if (n == 0) throw std::invalid_argument("lz76_complexity: empty sequence");

  const std::uint8_t* s = seq.bits.data();
  std::size_t phrases = 0;
  std::size_t pos = 0;

  // Occurrence starts still matching the growing candidate. An occurrence may
  // overlap the candidate but must start strictly before it, so that it ends
  // before the candidate's last symbol.
  std::vector<std::size_t> live;
  live.reserve(n);

  while (pos < n) {
    live.clear();
    for (std::size_t q = 0; q < pos; ++q)
      if (s[q] == s[pos]) live.push_back(q);

    // Candidate of length `len` is reproducible iff `live` is nonempty.
    // Extend while reproducible and there is room; the symbol that breaks
    // reproducibility belongs to the phrase.
    std::size_t len = 1;
    while (pos + len < n && !live.empty()) {
      ++len;
      std::size_t kept = 0;
      for (std::size_t idx = 0; idx < live.size(); ++idx) {
        const std::size_t q = live[idx];
        if (s[q + len - 1] == s[pos + len - 1]) live[kept++] = q;
      }
      live.resize(kept);
    }
    ++phrases;
    pos += len;
  }
  return phrases;
}

double normalized_lzc(const BinarySequence& seq) {
  const std::size_t n = seq.size();
  if (n < 2) throw std::invalid_argument("normalized_lzc: length must be >= 2");
  const double c = static_cast<double>(lz76_complexity(seq));
  return c / static_cast<double>(n) * std::log2(static_cast<double>(n));
}

ComplexityResult complexity_of(const BinarySequence& seq) {
  ComplexityResult r;
  r.n = seq.size();
  r.c_raw = lz76_complexity(seq);
  r.c_norm = static_cast<double>(r.c_raw) / static_cast<double>(r.n) *
             std::log2(static_cast<double>(r.n));
  return r;
}

int classify_by_lzc(double c_norm, double threshold) {
  if (!std::isfinite(threshold)) throw std::invalid_argument("threshold must be finite");
  return c_norm >= threshold ? 1 : 0;
}

}  // namespace spikebench
