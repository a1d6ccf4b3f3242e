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

#ifndef C3M_PROFILE_HPP_
#define C3M_PROFILE_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace c3m {

// Architecture hyperparameters. Two fixed profiles ship: "tiny" keeps every
// test fast on one core, "paper" is the full-size configuration.
struct Profile {
  std::string name;
  uint8_t id = 0;
  std::array<int, 4> stage_channels{};  // per downsampling stage of the main transform
  std::array<int, 4> stage_depths{};    // windowed-attention blocks per stage
  std::array<int, 2> hyper_depths{};    // blocks per hyper transform stage
  int context_dim = 0;                  // token width of the masked transformer
  int context_heads = 0;
  int context_depth = 0;
  int window_k = 4;                     // base window size of the attention groups

  int latent_channels() const { return stage_channels[3]; }
  int hyper_channels() const { return stage_channels[0]; }

  static const Profile& tiny();
  static const Profile& paper();
  static const Profile& by_name(std::string_view name);  // throws ConfigError
  static const Profile& by_id(uint8_t id);               // throws ConfigError
};

}  // namespace c3m

#endif  // C3M_PROFILE_HPP_
