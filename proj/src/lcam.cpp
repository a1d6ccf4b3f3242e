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

#include "lcam.hpp"

#include <cstring>

#include "attention.hpp"
#include "error.hpp"
#include "nn.hpp"

namespace c3m {

WindowPartition partition_windows(int h, int w, int group, int k) {
  if (h < 1 || w < 1) throw DimensionError("window grid extents must be positive");
  if (group < 1 || group > 4) throw ConfigError("window group must be 1..4");
  if (k < 1) throw ConfigError("window size must be >= 1");

  WindowPartition part;
  part.group = group;
  auto rect = [&](int r0, int r1, int c0, int c1) {
    std::vector<int> ids;
    ids.reserve(static_cast<size_t>(r1 - r0) * static_cast<size_t>(c1 - c0));
    for (int r = r0; r < r1; ++r)
      for (int c = c0; c < c1; ++c) ids.push_back(r * w + c);
    part.windows.push_back(std::move(ids));
  };

  switch (group) {
    case 1:  // horizontal strips, k rows each
      for (int r = 0; r < h; r += k) rect(r, std::min(r + k, h), 0, w);
      break;
    case 2:  // vertical strips, k columns each
      for (int c = 0; c < w; c += k) rect(0, h, c, std::min(c + k, w));
      break;
    case 3:  // k x k tiles
      for (int r = 0; r < h; r += k)
        for (int c = 0; c < w; c += k)
          rect(r, std::min(r + k, h), c, std::min(c + k, w));
      break;
    case 4: {  // 2k x 2k tiles
      const int t = 2 * k;
      for (int r = 0; r < h; r += t)
        for (int c = 0; c < w; c += t)
          rect(r, std::min(r + t, h), c, std::min(c + t, w));
      break;
    }
  }
  return part;
}

LcamBlock LcamBlock::resolve(const ModelWeights& w, const std::string& prefix) {
  LcamBlock b;
  b.ln1_gain = &w.get(prefix + "ln1.gain");
  b.ln1_shift = &w.get(prefix + "ln1.shift");
  b.w_q = &w.get(prefix + "attn.w_q");
  b.w_k = &w.get(prefix + "attn.w_k");
  b.w_v = &w.get(prefix + "attn.w_v");
  b.w_o = &w.get(prefix + "attn.w_o");
  for (int g = 0; g < 4; ++g)
    b.group_bias[g] = &w.get(prefix + "attn.gbias" + std::to_string(g));
  b.ln2_gain = &w.get(prefix + "ln2.gain");
  b.ln2_shift = &w.get(prefix + "ln2.shift");
  b.fc1_w = &w.get(prefix + "mlp.fc1.w");
  b.fc1_b = &w.get(prefix + "mlp.fc1.b");
  b.fc2_w = &w.get(prefix + "mlp.fc2.w");
  b.fc2_b = &w.get(prefix + "mlp.fc2.b");
  return b;
}

Tensor lcam_forward(const Tensor& x, const LcamBlock& block, int k) {
  if (x.rank() != 3) throw DimensionError("lcam_forward expects [H,W,C]");
  const int h = x.dim(0), w = x.dim(1), c = x.dim(2);
  if (c % 4 != 0) throw DimensionError("lcam channel count must be divisible by 4");
  const int n = h * w;
  const int dg = c / 4;

  // [H,W,C] and [N,C] share the same row-major layout.
  Tensor tok({n, c});
  std::memcpy(tok.data(), x.data(), static_cast<size_t>(n) * c * sizeof(double));

  const Tensor norm = layer_norm(tok, *block.ln1_gain, *block.ln1_shift);
  const Tensor q = linear_nb(norm, *block.w_q);
  const Tensor kk = linear_nb(norm, *block.w_k);
  const Tensor v = linear_nb(norm, *block.w_v);

  Tensor mixed({n, c});
  for (int g = 0; g < 4; ++g) {
    const int c0 = g * dg;
    const WindowPartition part = partition_windows(h, w, g + 1, k);
    for (const std::vector<int>& ids : part.windows) {
      const Tensor qw = gather_rows_cols(q, ids, c0, dg);
      const Tensor kw = gather_rows_cols(kk, ids, c0, dg);
      const Tensor vw = gather_rows_cols(v, ids, c0, dg);
      const Tensor ow = attend(qw, kw, vw, ids, ids, w, *block.group_bias[g], nullptr);
      scatter_rows_cols(mixed, ow, ids, c0);
    }
  }

  Tensor x1 = linear_nb(mixed, *block.w_o);
  {
    double* p = x1.data();
    const double* t = tok.data();
    for (int64_t i = 0; i < x1.size(); ++i) p[i] += t[i];
  }

  Tensor mid = layer_norm(x1, *block.ln2_gain, *block.ln2_shift);
  mid = linear(mid, *block.fc1_w, *block.fc1_b);
  gelu_inplace(mid);
  mid = linear(mid, *block.fc2_w, *block.fc2_b);
  {
    double* p = mid.data();
    const double* t = x1.data();
    for (int64_t i = 0; i < mid.size(); ++i) p[i] += t[i];
  }

  Tensor out({h, w, c});
  std::memcpy(out.data(), mid.data(), static_cast<size_t>(n) * c * sizeof(double));
  return out;
}

}  // namespace c3m
