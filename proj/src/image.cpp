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

#include "image.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "error.hpp"

namespace c3m {
namespace {

constexpr int kPadMultiple = 16;

class PnmScanner {
 public:
  PnmScanner(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  // Next whitespace-delimited token, skipping '#' comments.
  std::string token() {
    skip_separators();
    if (pos_ >= size_) throw FormatError("pnm: truncated header");
    std::string out;
    while (pos_ < size_ && !is_space(data_[pos_])) {
      out.push_back(static_cast<char>(data_[pos_++]));
    }
    return out;
  }

  int number(const char* what) {
    const std::string tok = token();
    int value = 0;
    for (char ch : tok) {
      if (ch < '0' || ch > '9') {
        throw FormatError(std::string("pnm: bad ") + what + " '" + tok + "'");
      }
      value = value * 10 + (ch - '0');
      if (value > 1 << 20) throw FormatError(std::string("pnm: ") + what + " too large");
    }
    if (tok.empty()) throw FormatError(std::string("pnm: missing ") + what);
    return value;
  }

  // Exactly one whitespace byte separates the maxval from pixel data.
  const uint8_t* pixels(size_t need) {
    if (pos_ >= size_ || !is_space(data_[pos_])) {
      throw FormatError("pnm: missing separator before pixel data");
    }
    ++pos_;
    if (size_ - pos_ < need) throw FormatError("pnm: truncated pixel data");
    return data_ + pos_;
  }

 private:
  static bool is_space(uint8_t b) {
    return b == ' ' || b == '\t' || b == '\n' || b == '\r' || b == '\f' || b == '\v';
  }

  void skip_separators() {
    while (pos_ < size_) {
      if (is_space(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < size_ && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

}  // namespace

ImageU8 parse_pnm(const uint8_t* data, size_t size) {
  if (size < 2) throw FormatError("pnm: too short");
  PnmScanner scan(data, size);
  const std::string magic = scan.token();
  const bool gray = magic == "P5";
  if (!gray && magic != "P6") {
    throw FormatError("pnm: expected P5 or P6, got '" + magic + "'");
  }
  ImageU8 img;
  img.width = scan.number("width");
  img.height = scan.number("height");
  if (img.width <= 0 || img.height <= 0) {
    throw FormatError("pnm: zero-sized image");
  }
  const int maxval = scan.number("maxval");
  if (maxval != 255) throw FormatError("pnm: only maxval 255 supported");

  const size_t pixel_count = static_cast<size_t>(img.width) * img.height;
  const size_t need = pixel_count * (gray ? 1 : 3);
  const uint8_t* px = scan.pixels(need);
  img.rgb.resize(pixel_count * 3);
  if (gray) {
    for (size_t i = 0; i < pixel_count; ++i) {
      img.rgb[3 * i] = img.rgb[3 * i + 1] = img.rgb[3 * i + 2] = px[i];
    }
  } else {
    img.rgb.assign(px, px + need);
  }
  return img;
}

ImageU8 read_pnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (!in.good() && !in.eof()) throw IoError("read failed: " + path);
  return parse_pnm(bytes.data(), bytes.size());
}

std::vector<uint8_t> serialize_ppm(const ImageU8& img) {
  if (img.width <= 0 || img.height <= 0 ||
      img.rgb.size() != static_cast<size_t>(img.width) * img.height * 3) {
    throw DimensionError("ppm: inconsistent image buffer");
  }
  char header[64];
  const int n = std::snprintf(header, sizeof(header), "P6\n%d %d\n255\n",
                              img.width, img.height);
  std::vector<uint8_t> out(header, header + n);
  out.insert(out.end(), img.rgb.begin(), img.rgb.end());
  return out;
}

void write_ppm(const std::string& path, const ImageU8& img) {
  const std::vector<uint8_t> bytes = serialize_ppm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

Tensor image_to_tensor_padded(const ImageU8& img) {
  if (img.width <= 0 || img.height <= 0) {
    throw DimensionError("empty image");
  }
  const int ph = (img.height + kPadMultiple - 1) / kPadMultiple * kPadMultiple;
  const int pw = (img.width + kPadMultiple - 1) / kPadMultiple * kPadMultiple;
  Tensor x({3, ph, pw});
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < ph; ++y) {
      const int sy = y < img.height ? y : img.height - 1;
      for (int xx = 0; xx < pw; ++xx) {
        const int sx = xx < img.width ? xx : img.width - 1;
        x(c, y, xx) = img.at(sy, sx, c) / 255.0;
      }
    }
  }
  return x;
}

ImageU8 tensor_to_image(const Tensor& x, int width, int height) {
  if (x.rank() != 3 || x.dim(0) != 3) {
    throw DimensionError("expected [3,H,W] tensor, got " + x.shape_string());
  }
  if (width <= 0 || height <= 0 || x.dim(1) < height || x.dim(2) < width) {
    throw DimensionError("crop region exceeds tensor extent");
  }
  ImageU8 img;
  img.width = width;
  img.height = height;
  img.rgb.resize(static_cast<size_t>(width) * height * 3);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < height; ++y) {
      for (int xx = 0; xx < width; ++xx) {
        const double v = std::round(x(c, y, xx) * 255.0);
        img.at(y, xx, c) =
            static_cast<uint8_t>(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v));
      }
    }
  }
  return img;
}

double psnr(const ImageU8& a, const ImageU8& b) {
  if (a.width != b.width || a.height != b.height) {
    throw DimensionError("psnr: image sizes differ");
  }
  if (a.rgb.size() != b.rgb.size() || a.rgb.empty()) {
    throw DimensionError("psnr: empty or inconsistent images");
  }
  double sum = 0.0;
  for (size_t i = 0; i < a.rgb.size(); ++i) {
    const double d = static_cast<double>(a.rgb[i]) - static_cast<double>(b.rgb[i]);
    sum += d * d;
  }
  if (sum == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sum / static_cast<double>(a.rgb.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace c3m
