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

#include "range_coder.hpp"

#include "error.hpp"

namespace c3m {

namespace {
constexpr uint32_t kTopValue = 1u << 24;
constexpr int kPrecision = 16;  // frequencies total 2^16
}  // namespace

void RangeEncoder::encode(uint32_t cum, uint32_t freq) {
  if (freq == 0) throw ConfigError("cannot encode zero-mass symbol");
  const uint32_t r = range_ >> kPrecision;
  low_ += static_cast<uint64_t>(r) * cum;
  range_ = r * freq;
  while (range_ < kTopValue) {
    shift_low();
    range_ <<= 8;
  }
}

void RangeEncoder::shift_low() {
  // Emit the cached byte (plus carry) once low cannot receive another carry,
  // or immediately after an overflow propagates one.
  if (low_ < 0xFF000000ULL || low_ > 0xFFFFFFFFULL) {
    const uint8_t carry = static_cast<uint8_t>(low_ >> 32);
    out_.push_back(static_cast<uint8_t>(cache_ + carry));
    for (; pending_ > 1; --pending_)
      out_.push_back(static_cast<uint8_t>(0xFF + carry));
    cache_ = static_cast<uint8_t>(low_ >> 24);
    pending_ = 0;
  }
  ++pending_;
  low_ = (low_ << 8) & 0xFFFFFFFFULL;
}

std::vector<uint8_t> RangeEncoder::finish() {
  for (int i = 0; i < 5; ++i) shift_low();
  return std::move(out_);
}

RangeDecoder::RangeDecoder(const uint8_t* data, size_t size)
    : data_(data), size_(size) {
  next_byte();  // the encoder's leading zero
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
}

uint8_t RangeDecoder::next_byte() {
  if (pos_ >= size_) throw DecodeError("entropy stream exhausted");
  return data_[pos_++];
}

uint32_t RangeDecoder::decode_target() {
  const uint32_t r = range_ >> kPrecision;
  const uint32_t target = code_ / r;
  return target <= kCdfTotal - 1 ? target : kCdfTotal - 1;
}

void RangeDecoder::consume(uint32_t cum, uint32_t freq) {
  const uint32_t r = range_ >> kPrecision;
  code_ -= r * cum;
  range_ = r * freq;
  while (range_ < kTopValue) {
    code_ = (code_ << 8) | next_byte();
    range_ <<= 8;
  }
}

}  // namespace c3m
