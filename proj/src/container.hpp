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

#ifndef C3M_CONTAINER_HPP_
#define C3M_CONTAINER_HPP_

#include <cstdint>
#include <vector>

#include "schedule.hpp"

namespace c3m {

// Bitstream layout, all integers little endian:
//   "C3M1"  magic
//   u8      format version (1)
//   u8      context kind (0 serial, 1 checkerboard, 2 c3m)
//   u8      profile id
//   u64     weight seed
//   u16     image height, u16 image width (pre padding)
//   u32 + bytes   hyper latent stream
//   u32           pass count
//   (u32 + bytes) per pass latent stream
struct Container {
  ContextKind kind = ContextKind::kC3m;
  uint8_t profile_id = 0;
  uint64_t seed = 0;
  uint16_t height = 0;
  uint16_t width = 0;
  std::vector<uint8_t> hyper_stream;
  std::vector<std::vector<uint8_t>> pass_streams;

  size_t payload_bytes() const;
};

std::vector<uint8_t> serialize_container(const Container& c);
Container parse_container(const uint8_t* data, size_t size);

}  // namespace c3m

#endif  // C3M_CONTAINER_HPP_
