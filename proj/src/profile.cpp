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

#include "profile.hpp"

#include "error.hpp"

namespace c3m {

const Profile& Profile::tiny() {
  static const Profile p{
      "tiny", 0, {32, 32, 48, 48}, {1, 1, 2, 1}, {2, 2}, 48, 3, 2, 4};
  return p;
}

const Profile& Profile::paper() {
  static const Profile p{
      "paper", 1, {128, 128, 192, 192}, {2, 4, 6, 2}, {2, 2}, 384, 6, 6, 4};
  return p;
}

const Profile& Profile::by_name(std::string_view name) {
  if (name == "tiny") return tiny();
  if (name == "paper") return paper();
  throw ConfigError("unknown profile: " + std::string(name));
}

const Profile& Profile::by_id(uint8_t id) {
  if (id == tiny().id) return tiny();
  if (id == paper().id) return paper();
  throw ConfigError("unknown profile id: " + std::to_string(id));
}

}  // namespace c3m
