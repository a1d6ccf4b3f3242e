// Copyright 2026 The c3m Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef C3M_RNG_HPP_
#define C3M_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace c3m {

// The weight generator must be reproducible down to the bit from (seed, path)
// alone, so only fully specified primitives are used: mt19937_64 plus an
// explicit mapping to doubles. std::normal_distribution and friends are
// implementation-defined and deliberately avoided.

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Derives an independent stream per parameter so the draw for one tensor does
// not depend on how many values some other tensor consumed.
inline uint64_t derive_seed(uint64_t seed, std::string_view path) {
  return splitmix64(seed ^ splitmix64(fnv1a64(path)));
}

class UniformSource {
 public:
  explicit UniformSource(uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [-bound, bound).
  double next_symmetric(double bound) {
    return (2.0 * next_unit() - 1.0) * bound;
  }

  uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace c3m

#endif  // C3M_RNG_HPP_
