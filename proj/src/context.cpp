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

#include "context.hpp"

#include <cmath>

#include "attention.hpp"
#include "entropy_model.hpp"
#include "error.hpp"
#include "nn.hpp"

namespace c3m {

namespace {

void check_mask(const Tensor& y, const CausalMask& mask) {
  if (y.rank() != 3) throw DimensionError("latents must be [C,h,w]");
  if (y.dim(1) != mask.h || y.dim(2) != mask.w)
    throw DimensionError("mask extents disagree with latents");
  if (mask.allowed.size() != static_cast<size_t>(mask.h) * mask.w)
    throw DimensionError("mask flag count disagrees with extents");
  for (int q : mask.queries) {
    if (q < 0 || q >= mask.h * mask.w) throw DimensionError("query out of range");
    if (mask.allowed[static_cast<size_t>(q)])
      throw DimensionError("query position is already decoded");
  }
}

}  // namespace

Tensor gather_positions(const Tensor& grid, const std::vector<int>& ids) {
  const int c = grid.dim(0);
  const int hw = grid.dim(1) * grid.dim(2);
  Tensor out({static_cast<int>(ids.size()), c});
  for (size_t i = 0; i < ids.size(); ++i) {
    double* row = out.data() + i * static_cast<size_t>(c);
    const double* src = grid.data() + ids[i];
    for (int ch = 0; ch < c; ++ch) row[ch] = src[static_cast<size_t>(ch) * hw];
  }
  return out;
}

Tensor zero_context(const CausalMask& mask, const Profile& profile) {
  return Tensor({static_cast<int>(mask.queries.size()), context_channels(profile)});
}

Tensor masked_transformer_context(const Tensor& y_partial, const CausalMask& mask,
                                  const ModelWeights& weights,
                                  const Profile& profile) {
  check_mask(y_partial, mask);
  if (mask.queries.empty()) return zero_context(mask, profile);
  if (!mask.any_allowed())
    throw DimensionError("transformer context requires a non-empty causal set");

  const int c = y_partial.dim(0);
  const int h = mask.h, w = mask.w, n = h * w;
  const int d = profile.context_dim;
  const int heads = profile.context_heads;
  const int dh = d / heads;

  // Token features: decoded value vector or zeros, plus the unknown flag.
  // Reading values only where allowed is what makes causality hold bit-for-bit.
  Tensor feat({n, c + 1});
  const int hw = n;
  for (int id = 0; id < n; ++id) {
    double* row = feat.data() + static_cast<size_t>(id) * (c + 1);
    if (mask.allowed[static_cast<size_t>(id)]) {
      const double* src = y_partial.data() + id;
      for (int ch = 0; ch < c; ++ch) row[ch] = src[static_cast<size_t>(ch) * hw];
      row[c] = 0.0;
    } else {
      row[c] = 1.0;  // value channels stay zero
    }
  }

  Tensor x = linear(feat, weights.get("ctx.embed.w"), weights.get("ctx.embed.b"));

  std::vector<int> all_ids(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) all_ids[static_cast<size_t>(i)] = i;

  for (int l = 0; l < profile.context_depth; ++l) {
    const std::string p = "ctx.l" + std::to_string(l) + ".";
    const Tensor norm =
        layer_norm(x, weights.get(p + "ln1.gain"), weights.get(p + "ln1.shift"));
    const Tensor q = linear_nb(norm, weights.get(p + "attn.w_q"));
    const Tensor k = linear_nb(norm, weights.get(p + "attn.w_k"));
    const Tensor v = linear_nb(norm, weights.get(p + "attn.w_v"));

    Tensor mixed({n, d});
    for (int hd = 0; hd < heads; ++hd) {
      const int c0 = hd * dh;
      const Tensor qh = gather_rows_cols(q, all_ids, c0, dh);
      const Tensor kh = gather_rows_cols(k, all_ids, c0, dh);
      const Tensor vh = gather_rows_cols(v, all_ids, c0, dh);
      const Tensor oh =
          attend(qh, kh, vh, all_ids, all_ids, w,
                 weights.get(p + "attn.hbias" + std::to_string(hd)), &mask.allowed);
      scatter_rows_cols(mixed, oh, all_ids, c0);
    }

    Tensor x1 = linear_nb(mixed, weights.get(p + "attn.w_o"));
    {
      double* a = x1.data();
      const double* b = x.data();
      for (int64_t i = 0; i < x1.size(); ++i) a[i] += b[i];
    }
    Tensor mid =
        layer_norm(x1, weights.get(p + "ln2.gain"), weights.get(p + "ln2.shift"));
    mid = linear(mid, weights.get(p + "mlp.fc1.w"), weights.get(p + "mlp.fc1.b"));
    gelu_inplace(mid);
    mid = linear(mid, weights.get(p + "mlp.fc2.w"), weights.get(p + "mlp.fc2.b"));
    {
      double* a = mid.data();
      const double* b = x1.data();
      for (int64_t i = 0; i < mid.size(); ++i) a[i] += b[i];
    }
    x = std::move(mid);
  }

  const Tensor phi_all = linear(x, weights.get("ctx.out.w"), weights.get("ctx.out.b"));
  return gather_rows_cols(phi_all, mask.queries, 0, phi_all.dim(1));
}

Tensor masked_conv_context(const Tensor& y_partial, const CausalMask& mask,
                           const ModelWeights& weights) {
  check_mask(y_partial, mask);
  const int c = y_partial.dim(0);
  const int h = mask.h, w = mask.w;

  // Zeroing undecoded inputs is equivalent to masking the kernel taps that
  // would read them, and keeps the conv a plain dense pass.
  Tensor gated({c, h, w});
  for (int ch = 0; ch < c; ++ch) {
    const double* src = y_partial.data() + static_cast<size_t>(ch) * h * w;
    double* dst = gated.data() + static_cast<size_t>(ch) * h * w;
    for (int id = 0; id < h * w; ++id)
      dst[id] = mask.allowed[static_cast<size_t>(id)] ? src[id] : 0.0;
  }

  const Tensor& cw = weights.get("cconv.w");
  const Tensor& cb = weights.get("cconv.b");
  ConvSpec spec;
  spec.kernel_h = spec.kernel_w = 3;
  spec.stride = 1;
  spec.padding = 1;
  spec.in_channels = c;
  spec.out_channels = cw.dim(0);
  const Tensor field = conv2d(gated, cw, cb, spec);
  return gather_positions(field, mask.queries);
}

Tensor context_features(Backbone backbone, const Tensor& y_partial,
                        const CausalMask& mask, const ModelWeights& weights,
                        const Profile& profile) {
  switch (backbone) {
    case Backbone::kNone: return zero_context(mask, profile);
    case Backbone::kConv3x3: return masked_conv_context(y_partial, mask, weights);
    case Backbone::kTransformer:
      return masked_transformer_context(y_partial, mask, weights, profile);
  }
  throw ConfigError("unknown backbone");
}

GaussianField entropy_parameters(const Tensor& psi_at, const Tensor& phi_at,
                                 const ModelWeights& weights) {
  if (psi_at.rank() != 2 || phi_at.rank() != 2 ||
      psi_at.dim(0) != phi_at.dim(0) || psi_at.dim(1) != phi_at.dim(1))
    throw DimensionError("entropy_parameters expects matching [N x 2C] inputs");
  const int n = psi_at.dim(0);
  const int twoc = psi_at.dim(1);
  const int c = twoc / 2;

  Tensor cat({n, 2 * twoc});
  for (int i = 0; i < n; ++i) {
    double* row = cat.data() + static_cast<size_t>(i) * 2 * twoc;
    const double* ps = psi_at.data() + static_cast<size_t>(i) * twoc;
    const double* ph = phi_at.data() + static_cast<size_t>(i) * twoc;
    for (int j = 0; j < twoc; ++j) row[j] = ps[j];
    for (int j = 0; j < twoc; ++j) row[twoc + j] = ph[j];
  }

  Tensor hid = linear(cat, weights.get("g_ep.fc0.w"), weights.get("g_ep.fc0.b"));
  relu_inplace(hid);
  const Tensor out = linear(hid, weights.get("g_ep.fc1.w"), weights.get("g_ep.fc1.b"));

  GaussianField f{Tensor({n, c}), Tensor({n, c})};
  const double lo = std::log(kSigmaMin), hi = std::log(kSigmaMax);
  for (int i = 0; i < n; ++i) {
    const double* row = out.data() + static_cast<size_t>(i) * twoc;
    double* mu = f.mu.data() + static_cast<size_t>(i) * c;
    double* sg = f.sigma.data() + static_cast<size_t>(i) * c;
    for (int j = 0; j < c; ++j) {
      mu[j] = row[j];
      double raw = row[c + j];
      if (raw < lo) raw = lo;
      if (raw > hi) raw = hi;
      sg[j] = std::exp(raw);
    }
  }
  return f;
}

}  // namespace c3m
