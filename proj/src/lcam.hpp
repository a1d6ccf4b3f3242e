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

#ifndef C3M_LCAM_HPP_
#define C3M_LCAM_HPP_

#include <string>
#include <vector>

#include "tensor.hpp"
#include "weights.hpp"

namespace c3m {

// A transformer block whose attention runs inside windows of four different
// geometries, one per quarter of the channels:
//   group 1: horizontal strips, k rows thick, full width
//   group 2: vertical strips, k columns thick, full height
//   group 3: k x k tiles
//   group 4: 2k x 2k tiles
// Edge windows truncate; nothing is padded. The thin strips give two of the
// groups a full-extent reach across the grid while the tiles stay local.

struct WindowPartition {
  int group = 0;  // 1..4
  // Flat position ids (row * w + col), row-major inside each window. Windows
  // are ordered top-to-bottom, left-to-right.
  std::vector<std::vector<int>> windows;
};

// group is 1-based. k >= 1. Every grid position lands in exactly one window.
WindowPartition partition_windows(int h, int w, int group, int k);

// Parameter references for one block, resolved once from the store.
struct LcamBlock {
  const Tensor* ln1_gain;
  const Tensor* ln1_shift;
  const Tensor* w_q;
  const Tensor* w_k;
  const Tensor* w_v;
  const Tensor* w_o;
  const Tensor* group_bias[4];
  const Tensor* ln2_gain;
  const Tensor* ln2_shift;
  const Tensor* fc1_w;
  const Tensor* fc1_b;
  const Tensor* fc2_w;
  const Tensor* fc2_b;

  static LcamBlock resolve(const ModelWeights& w, const std::string& prefix);
};

// x: [H x W x C] with C divisible by 4. Returns a tensor of the same shape:
//   x1 = x + W_o(window attention over LN(x))
//   out = x1 + MLP(LN(x1))        (MLP expands to 2C with gelu)
Tensor lcam_forward(const Tensor& x, const LcamBlock& block, int k);

}  // namespace c3m

#endif  // C3M_LCAM_HPP_
