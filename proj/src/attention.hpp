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

#ifndef C3M_ATTENTION_HPP_
#define C3M_ATTENTION_HPP_

#include <cstdint>
#include <vector>

#include "tensor.hpp"

namespace c3m {

// Relative-offset bias lookup: offsets clip to [-7, 7] on each axis, so every
// table is 15x15 regardless of grid size.
constexpr int kBiasClip = 7;

inline double relative_bias(const Tensor& table, int dr, int dc) {
  if (dr < -kBiasClip) dr = -kBiasClip;
  if (dr > kBiasClip) dr = kBiasClip;
  if (dc < -kBiasClip) dc = -kBiasClip;
  if (dc > kBiasClip) dc = kBiasClip;
  return table(dr + kBiasClip, dc + kBiasClip);
}

// Copies rows `ids` and the column band [c0, c0+d) of src [N x C] into a
// dense [|ids| x d] matrix.
Tensor gather_rows_cols(const Tensor& src, const std::vector<int>& ids, int c0, int d);

// Writes rows of `vals` [|ids| x d] back into dst [N x C] at column band c0.
void scatter_rows_cols(Tensor& dst, const Tensor& vals, const std::vector<int>& ids,
                       int c0);

// Scaled dot-product attention over gathered rows:
//   scores(i,j) = (q_i . k_j + bias(delta(i,j))) / sqrt(d)
// followed by row softmax and mixing with v. Token ids map to grid coordinates
// through grid_w (row = id / grid_w, col = id % grid_w) for the bias lookup.
// If key_allowed is non-null, scores into keys j with !key_allowed[j] are
// forced to -1e30 after scaling, which zeroes their softmax weight.
Tensor attend(const Tensor& q, const Tensor& k, const Tensor& v,
              const std::vector<int>& q_ids, const std::vector<int>& k_ids,
              int grid_w, const Tensor& bias_table,
              const std::vector<uint8_t>* key_allowed);

constexpr double kMaskedScore = -1e30;

}  // namespace c3m

#endif  // C3M_ATTENTION_HPP_
