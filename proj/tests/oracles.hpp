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

// Independent reference implementations used to judge the library. Everything
// here is written with plain loops and sets, on purpose: slow, obvious, and
// sharing no computation code with src/. Library types (Tensor, ModelWeights)
// appear only as containers for inputs and outputs.

#ifndef C3M_TESTS_ORACLES_HPP_
#define C3M_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "context.hpp"
#include "profile.hpp"
#include "tensor.hpp"
#include "weights.hpp"

namespace oracle {

// ---------- numeric integration of the normal density ----------

inline double normal_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

// Composite Simpson rule with enough panels for ~1e-12 absolute accuracy on
// the intervals this suite integrates.
inline double simpson(double a, double b, double mu, double sigma, int panels = 4000) {
  if (b <= a) return 0.0;
  const double h = (b - a) / (2.0 * panels);
  double sum = normal_pdf(a, mu, sigma) + normal_pdf(b, mu, sigma);
  for (int i = 1; i < 2 * panels; ++i) {
    sum += normal_pdf(a + i * h, mu, sigma) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// P(round(Y) == k) for Y ~ N(mu, sigma^2) over the [-128, 127] alphabet with
// tails folded into the end bins.
inline double bin_mass(int k, double mu, double sigma) {
  // the density is numerically zero beyond ~38 sigma
  const double far_lo = std::min(mu - 40.0 * sigma, k - 0.5);
  const double far_hi = std::max(mu + 40.0 * sigma, k + 0.5);
  if (k <= -128) return simpson(far_lo, -128 + 0.5, mu, sigma);
  if (k >= 127) return simpson(127 - 0.5, far_hi, mu, sigma);
  return simpson(k - 0.5, k + 0.5, mu, sigma);
}

inline double std_normal_cdf(double x) {
  if (x < -40.0) return 0.0;
  if (x > 40.0) return 1.0;
  return simpson(-40.0, x, 0.0, 1.0);
}

// ---------- decode schedules ----------

// One subdivision step: insert the midpoint of every gap of length >= 2.
inline std::set<int> refine_axis_once(const std::set<int>& axis) {
  std::set<int> out = axis;
  int prev = -1;
  bool first = true;
  for (int v : axis) {
    if (!first && v - prev >= 2) out.insert(prev + (v - prev) / 2);
    prev = v;
    first = false;
  }
  return out;
}

// Passes of the corner-to-center order as plain position-id lists,
// simulated directly from the axis-set definition.
inline std::vector<std::vector<int>> corner_to_center_passes(int h, int w) {
  std::set<int> xs{0, h - 1};
  std::set<int> ys{0, w - 1};
  std::set<int> decoded;
  std::vector<std::vector<int>> passes;
  while (true) {
    std::vector<int> pass;
    for (int r : xs) {
      for (int c : ys) {
        const int id = r * w + c;
        if (decoded.insert(id).second) pass.push_back(id);
      }
    }
    std::sort(pass.begin(), pass.end());
    if (!pass.empty()) passes.push_back(std::move(pass));
    const std::set<int> nxs = refine_axis_once(xs);
    const std::set<int> nys = refine_axis_once(ys);
    if (nxs == xs && nys == ys) break;
    xs = nxs;
    ys = nys;
  }
  return passes;
}

inline std::vector<std::vector<int>> checkerboard_passes(int h, int w) {
  std::vector<std::vector<int>> passes(2);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      passes[static_cast<size_t>((r + c) % 2)].push_back(r * w + c);
    }
  }
  return passes;
}

inline std::vector<std::vector<int>> serial_passes(int h, int w) {
  std::vector<std::vector<int>> passes;
  for (int id = 0; id < h * w; ++id) passes.push_back({id});
  return passes;
}

// ---------- shared attention arithmetic ----------

inline int clip7(int d) { return d < -7 ? -7 : (d > 7 ? 7 : d); }

inline std::vector<double> ln_row(const std::vector<double>& row,
                                  const c3m::Tensor& gain,
                                  const c3m::Tensor& shift) {
  const size_t d = row.size();
  double mean = 0.0;
  for (double v : row) mean += v;
  mean /= static_cast<double>(d);
  double var = 0.0;
  for (double v : row) var += (v - mean) * (v - mean);
  var /= static_cast<double>(d);
  std::vector<double> out(d);
  for (size_t i = 0; i < d; ++i) {
    out[i] = (row[i] - mean) / std::sqrt(var + 1e-6) * gain(static_cast<int>(i)) +
             shift(static_cast<int>(i));
  }
  return out;
}

// out[i] = sum_j x[i][j] * w[o][j]  (+ bias), i.e. w rows are output features.
inline std::vector<std::vector<double>> project(
    const std::vector<std::vector<double>>& x, const c3m::Tensor& w,
    const c3m::Tensor* bias) {
  const int out_d = w.dim(0);
  const int in_d = w.dim(1);
  std::vector<std::vector<double>> out(x.size(), std::vector<double>(out_d, 0.0));
  for (size_t i = 0; i < x.size(); ++i) {
    for (int o = 0; o < out_d; ++o) {
      double acc = bias ? (*bias)(o) : 0.0;
      for (int j = 0; j < in_d; ++j) acc += x[i][j] * w(o, j);
      out[i][o] = acc;
    }
  }
  return out;
}

inline double oracle_gelu(double x) {
  return 0.5 * x *
         (1.0 + std::tanh(std::sqrt(2.0 / M_PI) * (x + 0.044715 * x * x * x)));
}

// ---------- dense grouped attention (lcam reference) ----------

// Direct evaluation of one windowed-attention block on an [H,W,C] grid.
// Windows per group follow the strip/tile definitions with truncation.
inline c3m::Tensor lcam_block(const c3m::Tensor& x, const c3m::ModelWeights& wts,
                              const std::string& prefix, int k) {
  const int h = x.dim(0), w = x.dim(1), c = x.dim(2);
  const int n = h * w;
  const int dg = c / 4;

  std::vector<std::vector<double>> tok(n, std::vector<double>(c));
  for (int r = 0; r < h; ++r)
    for (int cc = 0; cc < w; ++cc)
      for (int ch = 0; ch < c; ++ch) tok[r * w + cc][ch] = x(r, cc, ch);

  std::vector<std::vector<double>> norm(n);
  for (int i = 0; i < n; ++i) {
    norm[i] = ln_row(tok[i], wts.get(prefix + "ln1.gain"),
                     wts.get(prefix + "ln1.shift"));
  }
  const auto q = project(norm, wts.get(prefix + "attn.w_q"), nullptr);
  const auto kk = project(norm, wts.get(prefix + "attn.w_k"), nullptr);
  const auto v = project(norm, wts.get(prefix + "attn.w_v"), nullptr);

  // window id lists per group, by the strip/tile definitions
  auto windows_of = [&](int group) {
    std::vector<std::vector<int>> wins;
    auto rect = [&](int r0, int r1, int c0, int c1) {
      std::vector<int> ids;
      for (int r = r0; r < r1; ++r)
        for (int cc = c0; cc < c1; ++cc) ids.push_back(r * w + cc);
      wins.push_back(ids);
    };
    const int t = group == 4 ? 2 * k : k;
    if (group == 1) {
      for (int r = 0; r < h; r += k) rect(r, std::min(r + k, h), 0, w);
    } else if (group == 2) {
      for (int cc = 0; cc < w; cc += k) rect(0, h, cc, std::min(cc + k, w));
    } else {
      for (int r = 0; r < h; r += t)
        for (int cc = 0; cc < w; cc += t)
          rect(r, std::min(r + t, h), cc, std::min(cc + t, w));
    }
    return wins;
  };

  std::vector<std::vector<double>> mixed(n, std::vector<double>(c, 0.0));
  for (int g = 0; g < 4; ++g) {
    const c3m::Tensor& bias = wts.get(prefix + "attn.gbias" + std::to_string(g));
    const double inv_scale = 1.0 / std::sqrt(static_cast<double>(dg));
    for (const std::vector<int>& ids : windows_of(g + 1)) {
      for (int qi : ids) {
        const int qr = qi / w, qc = qi % w;
        std::vector<double> scores;
        scores.reserve(ids.size());
        for (int kj : ids) {
          const int kr = kj / w, kc = kj % w;
          double dot = 0.0;
          for (int d = 0; d < dg; ++d) dot += q[qi][g * dg + d] * kk[kj][g * dg + d];
          const double p = bias(clip7(qr - kr) + 7, clip7(qc - kc) + 7);
          scores.push_back((dot + p) * inv_scale);
        }
        const double mx = *std::max_element(scores.begin(), scores.end());
        double denom = 0.0;
        for (double& s : scores) {
          s = std::exp(s - mx);
          denom += s;
        }
        for (int d = 0; d < dg; ++d) {
          double acc = 0.0;
          for (size_t j = 0; j < ids.size(); ++j) {
            acc += scores[j] / denom * v[ids[j]][g * dg + d];
          }
          mixed[qi][g * dg + d] = acc;
        }
      }
    }
  }

  auto x1 = project(mixed, wts.get(prefix + "attn.w_o"), nullptr);
  for (int i = 0; i < n; ++i)
    for (int ch = 0; ch < c; ++ch) x1[i][ch] += tok[i][ch];

  std::vector<std::vector<double>> mid(n);
  for (int i = 0; i < n; ++i) {
    mid[i] = ln_row(x1[i], wts.get(prefix + "ln2.gain"),
                    wts.get(prefix + "ln2.shift"));
  }
  auto hidden = project(mid, wts.get(prefix + "mlp.fc1.w"),
                        &wts.get(prefix + "mlp.fc1.b"));
  for (auto& row : hidden)
    for (double& vv : row) vv = oracle_gelu(vv);
  auto out_rows = project(hidden, wts.get(prefix + "mlp.fc2.w"),
                          &wts.get(prefix + "mlp.fc2.b"));
  for (int i = 0; i < n; ++i)
    for (int ch = 0; ch < c; ++ch) out_rows[i][ch] += x1[i][ch];

  c3m::Tensor out({h, w, c});
  for (int r = 0; r < h; ++r)
    for (int cc = 0; cc < w; ++cc)
      for (int ch = 0; ch < c; ++ch) out(r, cc, ch) = out_rows[r * w + cc][ch];
  return out;
}

// True when positions share a window in at least one of the four groups, so
// perturbing one may legitimately change the other's block output.
inline bool lcam_windows_overlap(int r1, int c1, int r2, int c2, int k) {
  if (r1 / k == r2 / k) return true;          // same horizontal strip
  if (c1 / k == c2 / k) return true;          // same vertical strip
  const int t = 2 * k;                        // k x k tiles are inside these
  return r1 / t == r2 / t && c1 / t == c2 / t;
}

// ---------- masked context backbones ----------

// Per-query 3x3 masked convolution, summing only taps whose source position
// is decoded.
inline c3m::Tensor masked_conv_context(const c3m::Tensor& y,
                                       const c3m::CausalMask& mask,
                                       const c3m::ModelWeights& wts) {
  const c3m::Tensor& wgt = wts.get("cconv.w");
  const c3m::Tensor& b = wts.get("cconv.b");
  const int cin = y.dim(0);
  const int cout = wgt.dim(0);
  c3m::Tensor out({static_cast<int>(mask.queries.size()), cout});
  for (size_t i = 0; i < mask.queries.size(); ++i) {
    const int r = mask.queries[i] / mask.w;
    const int c = mask.queries[i] % mask.w;
    for (int oc = 0; oc < cout; ++oc) {
      double acc = b(oc);
      for (int ic = 0; ic < cin; ++ic) {
        for (int dy = 0; dy < 3; ++dy) {
          for (int dx = 0; dx < 3; ++dx) {
            const int sr = r + dy - 1;
            const int sc = c + dx - 1;
            if (sr < 0 || sr >= mask.h || sc < 0 || sc >= mask.w) continue;
            if (!mask.allowed[static_cast<size_t>(sr) * mask.w + sc]) continue;
            acc += y(ic, sr, sc) * wgt(oc, ic, dy, dx);
          }
        }
      }
      out(static_cast<int>(i), oc) = acc;
    }
  }
  return out;
}

// Masked-transformer context features, evaluated token by token.
inline c3m::Tensor transformer_context(const c3m::Tensor& y,
                                       const c3m::CausalMask& mask,
                                       const c3m::ModelWeights& wts,
                                       const c3m::Profile& prof) {
  const int c = y.dim(0);
  const int h = mask.h, w = mask.w, n = h * w;
  const int d = prof.context_dim;
  const int heads = prof.context_heads;
  const int dh = d / heads;

  std::vector<std::vector<double>> feat(n, std::vector<double>(c + 1, 0.0));
  for (int id = 0; id < n; ++id) {
    if (mask.allowed[static_cast<size_t>(id)]) {
      for (int ch = 0; ch < c; ++ch) feat[id][ch] = y(ch, id / w, id % w);
    } else {
      feat[id][c] = 1.0;
    }
  }

  auto x = project(feat, wts.get("ctx.embed.w"), &wts.get("ctx.embed.b"));

  for (int l = 0; l < prof.context_depth; ++l) {
    const std::string p = "ctx.l" + std::to_string(l) + ".";
    std::vector<std::vector<double>> norm(n);
    for (int i = 0; i < n; ++i) {
      norm[i] = ln_row(x[i], wts.get(p + "ln1.gain"), wts.get(p + "ln1.shift"));
    }
    const auto q = project(norm, wts.get(p + "attn.w_q"), nullptr);
    const auto k = project(norm, wts.get(p + "attn.w_k"), nullptr);
    const auto v = project(norm, wts.get(p + "attn.w_v"), nullptr);

    std::vector<std::vector<double>> mixed(n, std::vector<double>(d, 0.0));
    for (int hd = 0; hd < heads; ++hd) {
      const c3m::Tensor& bias = wts.get(p + "attn.hbias" + std::to_string(hd));
      const double inv_scale = 1.0 / std::sqrt(static_cast<double>(dh));
      for (int qi = 0; qi < n; ++qi) {
        const int qr = qi / w, qc = qi % w;
        std::vector<double> scores(n);
        for (int kj = 0; kj < n; ++kj) {
          if (!mask.allowed[static_cast<size_t>(kj)]) {
            scores[kj] = -1e30;
            continue;
          }
          const int kr = kj / w, kc = kj % w;
          double dot = 0.0;
          for (int e = 0; e < dh; ++e) dot += q[qi][hd * dh + e] * k[kj][hd * dh + e];
          scores[kj] =
              (dot + bias(clip7(qr - kr) + 7, clip7(qc - kc) + 7)) * inv_scale;
        }
        const double mx = *std::max_element(scores.begin(), scores.end());
        double denom = 0.0;
        for (double& s : scores) {
          s = std::exp(s - mx);
          denom += s;
        }
        for (int e = 0; e < dh; ++e) {
          double acc = 0.0;
          for (int kj = 0; kj < n; ++kj) acc += scores[kj] / denom * v[kj][hd * dh + e];
          mixed[qi][hd * dh + e] = acc;
        }
      }
    }

    auto x1 = project(mixed, wts.get(p + "attn.w_o"), nullptr);
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < d; ++e) x1[i][e] += x[i][e];
    std::vector<std::vector<double>> mid(n);
    for (int i = 0; i < n; ++i) {
      mid[i] = ln_row(x1[i], wts.get(p + "ln2.gain"), wts.get(p + "ln2.shift"));
    }
    auto hidden = project(mid, wts.get(p + "mlp.fc1.w"), &wts.get(p + "mlp.fc1.b"));
    for (auto& row : hidden)
      for (double& vv : row) vv = oracle_gelu(vv);
    auto nxt = project(hidden, wts.get(p + "mlp.fc2.w"), &wts.get(p + "mlp.fc2.b"));
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < d; ++e) nxt[i][e] += x1[i][e];
    x = std::move(nxt);
  }

  const auto phi = project(x, wts.get("ctx.out.w"), &wts.get("ctx.out.b"));
  c3m::Tensor out({static_cast<int>(mask.queries.size()), static_cast<int>(phi[0].size())});
  for (size_t i = 0; i < mask.queries.size(); ++i) {
    for (size_t j = 0; j < phi[0].size(); ++j) {
      out(static_cast<int>(i), static_cast<int>(j)) = phi[static_cast<size_t>(mask.queries[i])][j];
    }
  }
  return out;
}

}  // namespace oracle

#endif  // C3M_TESTS_ORACLES_HPP_
