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

#include "attention.hpp"

#include <cmath>

#include "error.hpp"
#include "nn.hpp"

namespace c3m {

Tensor gather_rows_cols(const Tensor& src, const std::vector<int>& ids, int c0,
                        int d) {
  const int n = static_cast<int>(ids.size());
  const int c = src.dim(1);
  Tensor out({n, d});
  for (int i = 0; i < n; ++i) {
    const double* row = src.data() + static_cast<size_t>(ids[static_cast<size_t>(i)]) * c + c0;
    double* orow = out.data() + static_cast<size_t>(i) * d;
    for (int j = 0; j < d; ++j) orow[j] = row[j];
  }
  return out;
}

void scatter_rows_cols(Tensor& dst, const Tensor& vals, const std::vector<int>& ids,
                       int c0) {
  const int n = static_cast<int>(ids.size());
  const int d = vals.dim(1);
  const int c = dst.dim(1);
  for (int i = 0; i < n; ++i) {
    const double* row = vals.data() + static_cast<size_t>(i) * d;
    double* orow = dst.data() + static_cast<size_t>(ids[static_cast<size_t>(i)]) * c + c0;
    for (int j = 0; j < d; ++j) orow[j] = row[j];
  }
}

Tensor attend(const Tensor& q, const Tensor& k, const Tensor& v,
              const std::vector<int>& q_ids, const std::vector<int>& k_ids,
              int grid_w, const Tensor& bias_table,
              const std::vector<uint8_t>* key_allowed) {
  const int mq = q.dim(0), mk = k.dim(0), d = q.dim(1);
  if (k.dim(1) != d || v.dim(0) != mk)
    throw DimensionError("attend operand shapes disagree");
  const double inv_scale = 1.0 / std::sqrt(static_cast<double>(d));

  Tensor scores = matmul_nt(q, k);
  for (int i = 0; i < mq; ++i) {
    const int qr = q_ids[static_cast<size_t>(i)] / grid_w;
    const int qc = q_ids[static_cast<size_t>(i)] % grid_w;
    double* row = scores.data() + static_cast<size_t>(i) * mk;
    for (int j = 0; j < mk; ++j) {
      const int kr = k_ids[static_cast<size_t>(j)] / grid_w;
      const int kc = k_ids[static_cast<size_t>(j)] % grid_w;
      row[j] = (row[j] + relative_bias(bias_table, qr - kr, qc - kc)) * inv_scale;
    }
    if (key_allowed) {
      for (int j = 0; j < mk; ++j)
        if (!(*key_allowed)[static_cast<size_t>(j)]) row[j] = kMaskedScore;
    }
  }
  Tensor weights = softmax(scores, 1);
  return matmul(weights, v);
}

}  // namespace c3m
