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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"
#include "image.hpp"

using namespace c3m;

namespace {

std::vector<uint8_t> bytes_of(const std::string& s) {
  return std::vector<uint8_t>(s.begin(), s.end());
}

ImageU8 gradient_image(int w, int h) {
  ImageU8 img;
  img.width = w;
  img.height = h;
  img.rgb.resize(static_cast<size_t>(3) * w * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.at(y, x, 0) = static_cast<uint8_t>((x * 7 + y * 3) % 256);
      img.at(y, x, 1) = static_cast<uint8_t>((x * 5 + y * 11) % 256);
      img.at(y, x, 2) = static_cast<uint8_t>((x + y * 13) % 256);
    }
  }
  return img;
}

}  // namespace

TEST_CASE("P6 data parses with comments and arbitrary whitespace") {
  std::string header = "P6 # binary rgb\n  # another comment\n 2\t3 # extents\n255\n";
  std::vector<uint8_t> data = bytes_of(header);
  for (int i = 0; i < 18; ++i) data.push_back(static_cast<uint8_t>(10 * i));
  const ImageU8 img = parse_pnm(data.data(), data.size());
  CHECK(img.width == 2);
  CHECK(img.height == 3);
  CHECK(img.at(0, 0, 0) == 0);
  CHECK(img.at(0, 0, 2) == 20);
  CHECK(img.at(0, 1, 0) == 30);
  CHECK(img.at(2, 1, 2) == 170);
}

TEST_CASE("P5 gray data expands to identical RGB channels") {
  std::vector<uint8_t> data = bytes_of("P5\n3 2\n255\n");
  for (int i = 0; i < 6; ++i) data.push_back(static_cast<uint8_t>(40 * i));
  const ImageU8 img = parse_pnm(data.data(), data.size());
  CHECK(img.width == 3);
  CHECK(img.height == 2);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 3; ++x) {
      const uint8_t v = static_cast<uint8_t>(40 * (y * 3 + x));
      CHECK(img.at(y, x, 0) == v);
      CHECK(img.at(y, x, 1) == v);
      CHECK(img.at(y, x, 2) == v);
    }
  }
}

TEST_CASE("malformed PNM data is rejected") {
  auto reject = [](const std::string& text, std::vector<uint8_t> tail = {}) {
    std::vector<uint8_t> data = bytes_of(text);
    data.insert(data.end(), tail.begin(), tail.end());
    CHECK_THROWS_AS(parse_pnm(data.data(), data.size()), FormatError);
  };
  reject("P3\n1 1\n255\n", {1, 2, 3});              // ascii variant unsupported
  reject("P6\n1 1\n254\n", {1, 2, 3});              // maxval must be 255
  reject("P6\n1 1\n65535\n", {1, 2, 3, 4, 5, 6});   // 16-bit unsupported
  reject("P6\n2 2\n255\n", {1, 2, 3});              // truncated pixels
  reject("P6\n0 4\n255\n");                         // zero extent
  reject("P6\n-1 4\n255\n");                        // negative extent
  reject("P6\n1 1\n255\n");                         // no pixel bytes at all
  reject("P6\n1\n255\n", {1, 2, 3});                // missing height
  reject("");                                       // empty input
}

TEST_CASE("serialize then parse preserves every pixel") {
  const ImageU8 img = gradient_image(13, 9);
  const std::vector<uint8_t> ppm = serialize_ppm(img);
  const ImageU8 back = parse_pnm(ppm.data(), ppm.size());
  CHECK(back.width == img.width);
  CHECK(back.height == img.height);
  CHECK(back.rgb == img.rgb);
}

TEST_CASE("write then read round trips through a file") {
  const ImageU8 img = gradient_image(8, 5);
  const std::string path = "/tmp/c3m_test_image.ppm";
  write_ppm(path, img);
  const ImageU8 back = read_pnm(path);
  CHECK(back.rgb == img.rgb);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_pnm(path), IoError);
}

TEST_CASE("padding replicates the last row and column up to 16-multiples") {
  const ImageU8 img = gradient_image(17, 5);
  const Tensor t = image_to_tensor_padded(img);
  REQUIRE(t.dim(0) == 3);
  REQUIRE(t.dim(1) == 16);
  REQUIRE(t.dim(2) == 32);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < 16; ++y) {
      for (int x = 0; x < 32; ++x) {
        const int sy = y < 5 ? y : 4;
        const int sx = x < 17 ? x : 16;
        CHECK(t(c, y, x) == doctest::Approx(img.at(sy, sx, c) / 255.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("exact 16-multiples need no padding") {
  const ImageU8 img = gradient_image(32, 16);
  const Tensor t = image_to_tensor_padded(img);
  CHECK(t.dim(1) == 16);
  CHECK(t.dim(2) == 32);
}

TEST_CASE("tensor_to_image crops, scales, rounds, and clamps") {
  Tensor t({3, 16, 16});
  t(0, 0, 0) = 0.5;          // 127.5 rounds away from zero to 128
  t(1, 0, 0) = -0.25;        // clamps to 0
  t(2, 0, 0) = 1.75;         // clamps to 255
  t(0, 0, 1) = 100.4 / 255;  // rounds down to 100
  t(1, 0, 1) = 100.6 / 255;  // rounds up to 101
  t(2, 15, 15) = 1.0;        // outside the crop
  const ImageU8 img = tensor_to_image(t, 4, 3);
  CHECK(img.width == 4);
  CHECK(img.height == 3);
  CHECK(img.at(0, 0, 0) == 128);
  CHECK(img.at(0, 0, 1) == 0);
  CHECK(img.at(0, 0, 2) == 255);
  CHECK(img.at(0, 1, 0) == 100);
  CHECK(img.at(0, 1, 1) == 101);
  CHECK(img.at(2, 3, 0) == 0);
}

TEST_CASE("image to tensor to image is the identity") {
  const ImageU8 img = gradient_image(19, 11);
  const Tensor t = image_to_tensor_padded(img);
  const ImageU8 back = tensor_to_image(t, img.width, img.height);
  CHECK(back.rgb == img.rgb);
}

TEST_CASE("psnr pins its scale") {
  const ImageU8 a = gradient_image(12, 10);
  CHECK(psnr(a, a) == std::numeric_limits<double>::infinity());

  // +1 everywhere: MSE 1, 20*log10(255) = 48.1308...
  ImageU8 b = a;
  for (uint8_t& v : b.rgb) v = static_cast<uint8_t>(v < 255 ? v + 1 : v - 1);
  CHECK(psnr(a, b) == doctest::Approx(48.1308).epsilon(1e-4));

  // full-scale error: MSE 255^2, exactly 0 dB
  ImageU8 black = a, white = a;
  for (uint8_t& v : black.rgb) v = 0;
  for (uint8_t& v : white.rgb) v = 255;
  CHECK(psnr(black, white) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("psnr requires matching extents") {
  const ImageU8 a = gradient_image(4, 4);
  const ImageU8 b = gradient_image(4, 5);
  CHECK_THROWS_AS(psnr(a, b), DimensionError);
}
