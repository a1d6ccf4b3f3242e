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

#include "container.hpp"

#include <cstring>
#include <string>

#include "error.hpp"

namespace c3m {
namespace {

constexpr uint8_t kMagic[4] = {'C', '3', 'M', '1'};
constexpr uint8_t kVersion = 1;
constexpr uint32_t kMaxStreamBytes = 1u << 28;
constexpr uint32_t kMaxPassCount = 1u << 22;

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  Reader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  const uint8_t* bytes(size_t n, const char* what) {
    if (size_ - pos_ < n) {
      throw FormatError(std::string("container: truncated ") + what);
    }
    const uint8_t* p = data_ + pos_;
    pos_ += n;
    return p;
  }

  uint8_t u8(const char* what) { return bytes(1, what)[0]; }

  uint16_t u16(const char* what) {
    const uint8_t* p = bytes(2, what);
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
  }

  uint32_t u32(const char* what) {
    const uint8_t* p = bytes(4, what);
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) |
           (static_cast<uint32_t>(p[3]) << 24);
  }

  uint64_t u64(const char* what) {
    uint64_t v = u32(what);
    v |= static_cast<uint64_t>(u32(what)) << 32;
    return v;
  }

  size_t remaining() const { return size_ - pos_; }

 private:
  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

std::vector<uint8_t> read_stream(Reader& r, const char* what) {
  const uint32_t len = r.u32(what);
  if (len > kMaxStreamBytes) {
    throw FormatError(std::string("container: oversized ") + what);
  }
  const uint8_t* p = r.bytes(len, what);
  return std::vector<uint8_t>(p, p + len);
}

}  // namespace

size_t Container::payload_bytes() const {
  size_t total = hyper_stream.size();
  for (const auto& s : pass_streams) total += s.size();
  return total;
}

std::vector<uint8_t> serialize_container(const Container& c) {
  if (c.height == 0 || c.width == 0) {
    throw DimensionError("container: zero image extent");
  }
  std::vector<uint8_t> out(kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(static_cast<uint8_t>(c.kind));
  out.push_back(c.profile_id);
  put_u64(out, c.seed);
  put_u16(out, c.height);
  put_u16(out, c.width);
  put_u32(out, static_cast<uint32_t>(c.hyper_stream.size()));
  out.insert(out.end(), c.hyper_stream.begin(), c.hyper_stream.end());
  put_u32(out, static_cast<uint32_t>(c.pass_streams.size()));
  for (const auto& s : c.pass_streams) {
    put_u32(out, static_cast<uint32_t>(s.size()));
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

Container parse_container(const uint8_t* data, size_t size) {
  if (data == nullptr) throw FormatError("container: null data");
  Reader r(data, size);
  const uint8_t* magic = r.bytes(4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("container: bad magic");
  }
  const uint8_t version = r.u8("version");
  if (version != kVersion) {
    throw FormatError("container: unsupported version " +
                      std::to_string(version));
  }
  Container c;
  const uint8_t kind = r.u8("kind");
  if (kind > 2) {
    throw FormatError("container: unknown context kind " + std::to_string(kind));
  }
  c.kind = static_cast<ContextKind>(kind);
  c.profile_id = r.u8("profile");
  if (c.profile_id > 1) {
    throw FormatError("container: unknown profile " +
                      std::to_string(c.profile_id));
  }
  c.seed = r.u64("seed");
  c.height = r.u16("height");
  c.width = r.u16("width");
  if (c.height == 0 || c.width == 0) {
    throw FormatError("container: zero image extent");
  }
  c.hyper_stream = read_stream(r, "hyper stream");
  const uint32_t passes = r.u32("pass count");
  if (passes > kMaxPassCount) throw FormatError("container: pass count too large");
  c.pass_streams.reserve(passes);
  for (uint32_t i = 0; i < passes; ++i) {
    c.pass_streams.push_back(read_stream(r, "pass stream"));
  }
  if (r.remaining() != 0) {
    throw FormatError("container: trailing bytes");
  }
  return c;
}

}  // namespace c3m
