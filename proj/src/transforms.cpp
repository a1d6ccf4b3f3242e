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

#include "transforms.hpp"

#include <string>

#include "error.hpp"
#include "lcam.hpp"
#include "nn.hpp"

namespace c3m {

Tensor chw_to_hwc(const Tensor& x) {
  const int c = x.dim(0), h = x.dim(1), w = x.dim(2);
  Tensor out({h, w, c});
  for (int ch = 0; ch < c; ++ch)
    for (int r = 0; r < h; ++r)
      for (int cc = 0; cc < w; ++cc) out(r, cc, ch) = x(ch, r, cc);
  return out;
}

Tensor hwc_to_chw(const Tensor& x) {
  const int h = x.dim(0), w = x.dim(1), c = x.dim(2);
  Tensor out({c, h, w});
  for (int r = 0; r < h; ++r)
    for (int cc = 0; cc < w; ++cc)
      for (int ch = 0; ch < c; ++ch) out(ch, r, cc) = x(r, cc, ch);
  return out;
}

namespace {

// Attention blocks operate on [H,W,C]; the conv path is [C,H,W].
Tensor attn_stack(Tensor x_chw, const ModelWeights& w, const std::string& prefix,
                  int depth, int k) {
  if (depth == 0) return x_chw;
  Tensor hwc = chw_to_hwc(x_chw);
  for (int i = 0; i < depth; ++i) {
    const LcamBlock block = LcamBlock::resolve(w, prefix + "b" + std::to_string(i) + ".");
    hwc = lcam_forward(hwc, block, k);
  }
  return hwc_to_chw(hwc);
}

Tensor down_conv(const Tensor& x, const ModelWeights& w, const std::string& name,
                 bool relu) {
  const Tensor& kw = w.get(name + ".w");
  ConvSpec spec;
  spec.kernel_h = spec.kernel_w = 3;
  spec.stride = 2;
  spec.padding = 1;
  spec.in_channels = kw.dim(1);
  spec.out_channels = kw.dim(0);
  Tensor out = conv2d(x, kw, w.get(name + ".b"), spec);
  if (relu) relu_inplace(out);
  return out;
}

Tensor crop_chw(const Tensor& x, int h, int w) {
  if (x.dim(1) == h && x.dim(2) == w) return x;
  if (x.dim(1) < h || x.dim(2) < w)
    throw DimensionError("crop target exceeds source extents");
  const int c = x.dim(0);
  Tensor out({c, h, w});
  for (int ch = 0; ch < c; ++ch)
    for (int r = 0; r < h; ++r)
      for (int cc = 0; cc < w; ++cc) out(ch, r, cc) = x(ch, r, cc);
  return out;
}

// Stride-2 transposed conv producing exactly (2*in) per axis, or any smaller
// requested extent: the full (2*in + 1) output is cropped at the top-left.
Tensor up_conv(const Tensor& x, const ModelWeights& w, const std::string& name,
               int target_h, int target_w, bool relu) {
  const Tensor& kw = w.get(name + ".w");
  ConvSpec spec;
  spec.kernel_h = spec.kernel_w = 3;
  spec.stride = 2;
  spec.padding = 0;
  spec.in_channels = kw.dim(1);
  spec.out_channels = kw.dim(0);
  Tensor out = conv_transpose2d(x, kw, w.get(name + ".b"), spec);
  out = crop_chw(out, target_h, target_w);
  if (relu) relu_inplace(out);
  return out;
}

void clamp01_inplace(Tensor& x) {
  double* p = x.data();
  for (int64_t i = 0; i < x.size(); ++i) {
    if (p[i] < 0.0) p[i] = 0.0;
    if (p[i] > 1.0) p[i] = 1.0;
  }
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

Tensor analysis(const Tensor& x, const ModelWeights& w, const Profile& p) {
  if (x.rank() != 3 || x.dim(0) != 3) throw DimensionError("analysis expects [3,H,W]");
  if (x.dim(1) % 16 != 0 || x.dim(2) % 16 != 0)
    throw DimensionError("analysis extents must be multiples of 16");
  Tensor t = x;
  for (int s = 0; s < 4; ++s) {
    t = down_conv(t, w, "g_a.down" + std::to_string(s), /*relu=*/true);
    t = attn_stack(std::move(t), w, "g_a.s" + std::to_string(s) + ".",
                   p.stage_depths[static_cast<size_t>(s)], p.window_k);
  }
  return t;
}

Tensor synthesis(const Tensor& y, const ModelWeights& w, const Profile& p) {
  if (y.rank() != 3 || y.dim(0) != p.latent_channels())
    throw DimensionError("synthesis expects [C,h,w] latents");
  Tensor t = y;
  int th = y.dim(1), tw = y.dim(2);
  for (int s = 0; s < 4; ++s) {
    // Stage s consumes the depth of analysis stage 3-s.
    t = attn_stack(std::move(t), w, "g_s.s" + std::to_string(s) + ".",
                   p.stage_depths[static_cast<size_t>(3 - s)], p.window_k);
    th *= 2;
    tw *= 2;
    const bool last = (s == 3);
    t = up_conv(t, w, "g_s.up" + std::to_string(s), th, tw, /*relu=*/!last);
  }
  clamp01_inplace(t);
  return t;
}

Tensor hyper_analysis(const Tensor& y, const ModelWeights& w, const Profile& p) {
  if (y.rank() != 3 || y.dim(0) != p.latent_channels())
    throw DimensionError("hyper_analysis expects [C,h,w] latents");
  Tensor t = down_conv(y, w, "h_a.down0", /*relu=*/true);
  t = attn_stack(std::move(t), w, "h_a.s0.", p.hyper_depths[0], p.window_k);
  t = down_conv(t, w, "h_a.down1", /*relu=*/true);
  t = attn_stack(std::move(t), w, "h_a.s1.", p.hyper_depths[1], p.window_k);
  return t;
}

Tensor hyper_synthesis(const Tensor& z_hat, const ModelWeights& w, const Profile& p,
                       int target_h, int target_w) {
  if (z_hat.rank() != 3 || z_hat.dim(0) != p.hyper_channels())
    throw DimensionError("hyper_synthesis expects [Cz,zh,zw]");
  const int mid_h = ceil_div(target_h, 2), mid_w = ceil_div(target_w, 2);
  if (z_hat.dim(1) != ceil_div(mid_h, 2) || z_hat.dim(2) != ceil_div(mid_w, 2))
    throw DimensionError("hyper latent extents disagree with target");
  Tensor t = attn_stack(z_hat, w, "h_s.s0.", p.hyper_depths[1], p.window_k);
  t = up_conv(t, w, "h_s.up0", mid_h, mid_w, /*relu=*/true);
  t = attn_stack(std::move(t), w, "h_s.s1.", p.hyper_depths[0], p.window_k);
  t = up_conv(t, w, "h_s.up1", target_h, target_w, /*relu=*/false);
  return t;
}

}  // namespace c3m
