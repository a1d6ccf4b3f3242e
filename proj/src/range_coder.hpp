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

#ifndef C3M_RANGE_CODER_HPP_
#define C3M_RANGE_CODER_HPP_

#include <cstdint>
#include <vector>

#include "entropy_model.hpp"

namespace c3m {

// Byte-oriented range coder: 64-bit low for carry handling, 32-bit range,
// renormalized whenever the range drops below 2^24 so 16-bit frequencies
// always fit. The flush emits five bytes (the first output byte is a leading
// zero the decoder skips); an empty stream is exactly that flush.
class RangeEncoder {
 public:
  void encode(uint32_t cum, uint32_t freq);
  void encode_symbol(const SymbolModel& m, int symbol) {
    encode(m.cum(symbol), m.freq(symbol));
  }
  // Flushes and returns the stream. The encoder is spent afterwards.
  std::vector<uint8_t> finish();

 private:
  void shift_low();
  uint64_t low_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint8_t cache_ = 0;
  uint64_t pending_ = 1;
  std::vector<uint8_t> out_;
};

class RangeDecoder {
 public:
  // Throws DecodeError if the stream is shorter than the five-byte preamble.
  RangeDecoder(const uint8_t* data, size_t size);

  // Cumulative-frequency slot of the next symbol, in [0, kCdfTotal).
  uint32_t decode_target();
  // Must be called with the (cum, freq) of the symbol found at the target.
  void consume(uint32_t cum, uint32_t freq);

  int decode_symbol(const SymbolModel& m) {
    const int s = m.find(decode_target());
    consume(m.cum(s), m.freq(s));
    return s;
  }

 private:
  uint8_t next_byte();
  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint32_t code_ = 0;
};

}  // namespace c3m

#endif  // C3M_RANGE_CODER_HPP_
