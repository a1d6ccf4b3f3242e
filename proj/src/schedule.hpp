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

#ifndef C3M_SCHEDULE_HPP_
#define C3M_SCHEDULE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace c3m {

enum class ContextKind : uint8_t {
  kSerial = 0,        // raster order, one position per pass
  kCheckerboard = 1,  // anchors (even row+col) first, the rest second
  kC3m = 2,           // corner-to-center midpoint refinement
};

enum class Backbone : uint8_t {
  kNone = 0,         // no causal context; model falls back to the side info
  kConv3x3 = 1,      // masked 3x3 convolution
  kTransformer = 2,  // masked transformer over all grid positions
};

const char* to_string(ContextKind k);
const char* to_string(Backbone b);
ContextKind kind_from_string(const std::string& s);  // throws ConfigError

struct Pass {
  std::vector<int> positions;  // flat ids (row * w + col), row-major order
  Backbone backbone = Backbone::kNone;
};

// Decode order for an h x w latent grid. The causal set of pass t is the
// union of all positions in passes 0..t-1; it is kept implicit rather than
// materialized (for the serial order it would be quadratic in grid size).
class Schedule {
 public:
  static Schedule make(ContextKind kind, int h, int w);
  static Schedule serial(int h, int w);
  static Schedule checkerboard(int h, int w);
  static Schedule corner_to_center(int h, int w);

  ContextKind kind() const { return kind_; }
  int h() const { return h_; }
  int w() const { return w_; }
  size_t pass_count() const { return passes_.size(); }
  const Pass& pass(size_t t) const { return passes_[t]; }
  const std::vector<Pass>& passes() const { return passes_; }

  // Number of positions decoded before pass t.
  int64_t causal_count(size_t t) const;

 private:
  Schedule(ContextKind kind, int h, int w) : kind_(kind), h_(h), w_(w) {}
  ContextKind kind_;
  int h_, w_;
  std::vector<Pass> passes_;
};

struct PassStats {
  int index = 0;
  int64_t size = 0;
  int64_t causal = 0;
  Backbone backbone = Backbone::kNone;
  // Transformer passes see the whole causal set; conv passes see decoded
  // cells inside their 3x3 neighborhood (mean over the pass's positions).
  double receptive = 0.0;
};

struct ScheduleStats {
  int h = 0, w = 0;
  ContextKind kind = ContextKind::kSerial;
  size_t pass_count = 0;
  int64_t zero_context_count = 0;  // positions decoded with an empty causal set
  std::vector<PassStats> passes;
};

ScheduleStats schedule_stats(const Schedule& s);

// "key: value" lines, one fact per line.
std::string schedule_report_text(const Schedule& s, bool include_positions);
// JSON with the same fields.
std::string schedule_report_json(const Schedule& s, bool include_positions);

}  // namespace c3m

#endif  // C3M_SCHEDULE_HPP_
