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

#include "nn.hpp"

#include <cmath>

namespace c3m {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require(a.rank() == 2 && b.rank() == 2, "matmul expects rank-2 operands");
  require(a.dim(1) == b.dim(0), "matmul inner extents differ");
  const int m = a.dim(0), k = a.dim(1), n = b.dim(1);
  Tensor c({m, n});
  const double* pa = a.data();
  const double* pb = b.data();
  double* pc = c.data();
  // i,k,j order: the inner loop walks contiguous rows of b and c, and each
  // output element accumulates its k terms in ascending order.
  for (int i = 0; i < m; ++i) {
    double* crow = pc + static_cast<size_t>(i) * n;
    const double* arow = pa + static_cast<size_t>(i) * k;
    for (int kk = 0; kk < k; ++kk) {
      const double av = arow[kk];
      const double* brow = pb + static_cast<size_t>(kk) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
  return c;
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
  require(a.rank() == 2 && b.rank() == 2, "matmul_nt expects rank-2 operands");
  require(a.dim(1) == b.dim(1), "matmul_nt inner extents differ");
  const int n = b.dim(0), k = b.dim(1);
  Tensor bt({k, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) bt(j, i) = b(i, j);
  return matmul(a, bt);
}

Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& bias,
              const ConvSpec& spec) {
  require(x.rank() == 3 && w.rank() == 4 && bias.rank() == 1,
          "conv2d expects x[C,H,W], w[Co,Ci,kh,kw], bias[Co]");
  require(x.dim(0) == spec.in_channels && w.dim(0) == spec.out_channels &&
              w.dim(1) == spec.in_channels && w.dim(2) == spec.kernel_h &&
              w.dim(3) == spec.kernel_w && bias.dim(0) == spec.out_channels,
          "conv2d operand shapes disagree with spec");
  const int ci = spec.in_channels, co = spec.out_channels;
  const int h = x.dim(1), wd = x.dim(2);
  const int oh = spec.out_extent(h, spec.kernel_h);
  const int ow = spec.out_extent(wd, spec.kernel_w);
  require(oh >= 1 && ow >= 1, "conv2d output extent is empty");
  Tensor out({co, oh, ow});

  for (int oc = 0; oc < co; ++oc) {
    double* oplane = out.data() + static_cast<size_t>(oc) * oh * ow;
    const double b = bias(oc);
    for (int64_t i = 0; i < static_cast<int64_t>(oh) * ow; ++i) oplane[i] = b;
    for (int ic = 0; ic < ci; ++ic) {
      const double* iplane = x.data() + static_cast<size_t>(ic) * h * wd;
      for (int kh = 0; kh < spec.kernel_h; ++kh) {
        for (int kw = 0; kw < spec.kernel_w; ++kw) {
          const double wv = w(oc, ic, kh, kw);
          if (wv == 0.0) continue;
          for (int oy = 0; oy < oh; ++oy) {
            const int iy = oy * spec.stride - spec.padding + kh;
            if (iy < 0 || iy >= h) continue;
            const double* irow = iplane + static_cast<size_t>(iy) * wd;
            double* orow = oplane + static_cast<size_t>(oy) * ow;
            // Clip the ox range so ix stays inside [0, wd).
            int ox0 = 0;
            int ix0 = -spec.padding + kw;
            while (ox0 < ow && ix0 + ox0 * spec.stride < 0) ++ox0;
            for (int ox = ox0; ox < ow; ++ox) {
              const int ix = ix0 + ox * spec.stride;
              if (ix >= wd) break;
              orow[ox] += wv * irow[ix];
            }
          }
        }
      }
    }
  }
  return out;
}

Tensor conv_transpose2d(const Tensor& x, const Tensor& w, const Tensor& bias,
                        const ConvSpec& spec) {
  require(x.rank() == 3 && w.rank() == 4 && bias.rank() == 1,
          "conv_transpose2d expects x[C,H,W], w[Co,Ci,kh,kw], bias[Co]");
  require(x.dim(0) == spec.in_channels && w.dim(0) == spec.out_channels &&
              w.dim(1) == spec.in_channels && w.dim(2) == spec.kernel_h &&
              w.dim(3) == spec.kernel_w && bias.dim(0) == spec.out_channels,
          "conv_transpose2d operand shapes disagree with spec");
  const int ci = spec.in_channels, co = spec.out_channels;
  const int h = x.dim(1), wd = x.dim(2);
  const int oh = spec.transposed_extent(h, spec.kernel_h);
  const int ow = spec.transposed_extent(wd, spec.kernel_w);
  require(oh >= 1 && ow >= 1, "conv_transpose2d output extent is empty");
  Tensor out({co, oh, ow});

  for (int oc = 0; oc < co; ++oc) {
    double* oplane = out.data() + static_cast<size_t>(oc) * oh * ow;
    const double b = bias(oc);
    for (int64_t i = 0; i < static_cast<int64_t>(oh) * ow; ++i) oplane[i] = b;
    for (int ic = 0; ic < ci; ++ic) {
      const double* iplane = x.data() + static_cast<size_t>(ic) * h * wd;
      for (int kh = 0; kh < spec.kernel_h; ++kh) {
        for (int kw = 0; kw < spec.kernel_w; ++kw) {
          const double wv = w(oc, ic, kh, kw);
          if (wv == 0.0) continue;
          for (int iy = 0; iy < h; ++iy) {
            const int oy = iy * spec.stride + kh - spec.padding;
            if (oy < 0 || oy >= oh) continue;
            const double* irow = iplane + static_cast<size_t>(iy) * wd;
            double* orow = oplane + static_cast<size_t>(oy) * ow;
            for (int ix = 0; ix < wd; ++ix) {
              const int ox = ix * spec.stride + kw - spec.padding;
              if (ox < 0 || ox >= ow) continue;
              orow[ox] += wv * irow[ix];
            }
          }
        }
      }
    }
  }
  return out;
}

Tensor layer_norm(const Tensor& x, const Tensor& gain, const Tensor& shift) {
  require(x.rank() == 2 && gain.rank() == 1 && shift.rank() == 1,
          "layer_norm expects x[N,d], gain[d], shift[d]");
  const int n = x.dim(0), d = x.dim(1);
  require(gain.dim(0) == d && shift.dim(0) == d, "layer_norm parameter extent");
  Tensor out({n, d});
  for (int i = 0; i < n; ++i) {
    const double* row = x.data() + static_cast<size_t>(i) * d;
    double mean = 0.0;
    for (int j = 0; j < d; ++j) mean += row[j];
    mean /= d;
    double var = 0.0;
    for (int j = 0; j < d; ++j) {
      const double c = row[j] - mean;
      var += c * c;
    }
    var /= d;
    const double inv = 1.0 / std::sqrt(var + kLayerNormEpsilon);
    double* orow = out.data() + static_cast<size_t>(i) * d;
    for (int j = 0; j < d; ++j)
      orow[j] = (row[j] - mean) * inv * gain(j) + shift(j);
  }
  return out;
}

Tensor softmax(const Tensor& x, int axis) {
  require(axis >= 0 && axis < x.rank(), "softmax axis out of range");
  // View the tensor as [outer, n, inner] with n along `axis`.
  int64_t outer = 1, inner = 1;
  for (int i = 0; i < axis; ++i) outer *= x.dim(i);
  const int n = x.dim(axis);
  for (int i = axis + 1; i < x.rank(); ++i) inner *= x.dim(i);
  Tensor out(x.shape());
  const double* px = x.data();
  double* po = out.data();
  for (int64_t o = 0; o < outer; ++o) {
    for (int64_t in = 0; in < inner; ++in) {
      const double* base = px + o * n * inner + in;
      double* obase = po + o * n * inner + in;
      double mx = base[0];
      for (int i = 1; i < n; ++i) mx = std::max(mx, base[static_cast<size_t>(i) * inner]);
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        const double e = std::exp(base[static_cast<size_t>(i) * inner] - mx);
        obase[static_cast<size_t>(i) * inner] = e;
        sum += e;
      }
      const double inv = 1.0 / sum;
      for (int i = 0; i < n; ++i) obase[static_cast<size_t>(i) * inner] *= inv;
    }
  }
  return out;
}

Tensor linear(const Tensor& x, const Tensor& w, const Tensor& b) {
  require(x.rank() == 2 && w.rank() == 2 && b.rank() == 1,
          "linear expects x[N,in], w[out,in], b[out]");
  require(x.dim(1) == w.dim(1) && w.dim(0) == b.dim(0),
          "linear operand shapes disagree");
  const int n = x.dim(0), in = x.dim(1), out_d = w.dim(0);
  Tensor wt({in, out_d});
  for (int o = 0; o < out_d; ++o)
    for (int j = 0; j < in; ++j) wt(j, o) = w(o, j);
  Tensor out = matmul(x, wt);
  for (int i = 0; i < n; ++i) {
    double* orow = out.data() + static_cast<size_t>(i) * out_d;
    for (int o = 0; o < out_d; ++o) orow[o] += b(o);
  }
  return out;
}

Tensor linear_nb(const Tensor& x, const Tensor& w) {
  Tensor zero({w.dim(0)});
  return linear(x, w, zero);
}

double gelu(double x) {
  constexpr double kSqrt2OverPi = 0.7978845608028654;
  constexpr double kCubicCoef = 0.044715;
  const double u = kSqrt2OverPi * (x + kCubicCoef * x * x * x);
  return 0.5 * x * (1.0 + std::tanh(u));
}

void gelu_inplace(Tensor& x) {
  double* p = x.data();
  for (int64_t i = 0; i < x.size(); ++i) p[i] = gelu(p[i]);
}

void relu_inplace(Tensor& x) {
  double* p = x.data();
  for (int64_t i = 0; i < x.size(); ++i)
    if (p[i] < 0.0) p[i] = 0.0;
}

}  // namespace c3m
