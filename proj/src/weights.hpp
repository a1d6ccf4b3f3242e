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

#ifndef C3M_WEIGHTS_HPP_
#define C3M_WEIGHTS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "profile.hpp"
#include "tensor.hpp"

namespace c3m {

struct ParamSpec {
  std::string path;
  std::vector<int> shape;
};

// Every parameter a profile requires, in a fixed order. Single source of truth
// for seeding, serialization, and load-time validation.
std::vector<ParamSpec> parameter_inventory(const Profile& profile);

// Named parameter store. Weight matrices draw from a per-parameter uniform
// with standard deviation 1/sqrt(fan_in); biases and norm shifts start at
// zero, norm gains at one. Everything is reproducible from (profile, seed).
class ModelWeights {
 public:
  ModelWeights() = default;

  static ModelWeights seeded(const Profile& profile, uint64_t seed);

  const Tensor& get(const std::string& path) const;  // throws ConfigError
  Tensor& mutable_get(const std::string& path);
  bool has(const std::string& path) const { return params_.count(path) != 0; }
  Tensor& add(const std::string& path, std::vector<int> shape);

  const std::map<std::string, Tensor>& all() const { return params_; }
  int64_t total_values() const;

  // Weight file: "C3MW", version byte, profile byte, then one record per
  // parameter: u32 path length, path bytes, u8 rank, u32 extents,
  // little-endian f64 values. Load validates the exact parameter set and
  // shapes against the profile inventory.
  void save(const std::string& path, const Profile& profile) const;
  static ModelWeights load(const std::string& path, const Profile& profile);

  std::vector<uint8_t> serialize(const Profile& profile) const;
  static ModelWeights deserialize(const uint8_t* data, size_t size,
                                  const Profile& profile);

 private:
  std::map<std::string, Tensor> params_;
};

}  // namespace c3m

#endif  // C3M_WEIGHTS_HPP_
