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

#ifndef C3M_IMAGE_HPP_
#define C3M_IMAGE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tensor.hpp"

namespace c3m {

// 8-bit RGB, interleaved rows.
struct ImageU8 {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rgb;  // 3 * width * height

  uint8_t& at(int y, int x, int c) {
    return rgb[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
  uint8_t at(int y, int x, int c) const {
    return rgb[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
};

// Binary PPM (P6) or PGM (P5), 8-bit only. Gray images expand to RGB.
ImageU8 read_pnm(const std::string& path);
ImageU8 parse_pnm(const uint8_t* data, size_t size);
// Always writes P6.
void write_ppm(const std::string& path, const ImageU8& img);
std::vector<uint8_t> serialize_ppm(const ImageU8& img);

// [0,1]-scaled planes, padded to multiples of 16 by replicating the last row
// and column.
Tensor image_to_tensor_padded(const ImageU8& img);
// Crop the top-left width x height region, scale by 255, round, clamp.
ImageU8 tensor_to_image(const Tensor& x, int width, int height);

// 10*log10(255^2 / MSE) over all channels; +infinity when images are equal.
double psnr(const ImageU8& a, const ImageU8& b);

}  // namespace c3m

#endif  // C3M_IMAGE_HPP_
