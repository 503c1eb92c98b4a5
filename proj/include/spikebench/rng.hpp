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

namespace spikebench {

// Counter-based splittable generator. Output i of key k is a pure function
// of (k, i), so child streams obtained via split() are independent of how
// much the parent has been consumed. SplitMix64-style finalizer.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return hash2(key_, counter_++); }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  // Child stream `stream` of this key. Children never share the parent's
  // counter domain.
  SplitRng split(std::uint64_t stream) const {
    return SplitRng(hash2(key_ ^ kSplitDomain, stream));
  }

  std::uint64_t key() const { return key_; }

 private:
  static constexpr std::uint64_t kSplitDomain = 0xa5a5a5a5deadbeefULL;

  static std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t hash2(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ULL));
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace spikebench
