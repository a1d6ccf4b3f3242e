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

#include "codec.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "context.hpp"
#include "entropy_model.hpp"
#include "error.hpp"
#include "range_coder.hpp"
#include "transforms.hpp"

namespace c3m {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Per-channel static scales for the hyper latents: sigma = exp(raw), clamped.
std::vector<double> hyper_scales(const ModelWeights& w) {
  const Tensor& raw = w.get("hyper_sigma.raw");
  std::vector<double> scales(raw.size());
  const double lo = std::log(kSigmaMin);
  const double hi = std::log(kSigmaMax);
  for (int c = 0; c < static_cast<int>(raw.size()); ++c) {
    scales[c] = std::exp(std::clamp(raw.at_flat(c), lo, hi));
  }
  return scales;
}

struct PassParams {
  std::vector<int32_t> symbols;  // coding order: position-major, channel minor
  std::vector<double> mu;
  std::vector<double> sigma;
};

// Shared by encoder and decoder so both sides derive (mu, sigma) from the
// same knowledge state. `symbols` stays empty on the decode side.
PassParams pass_parameters(const Pass& pass, const Tensor& y_known,
                           const CausalMask& mask, const Tensor& psi,
                           const ModelWeights& w, const Profile& p,
                           const Tensor* y_hat_for_symbols) {
  const int n = static_cast<int>(pass.positions.size());
  const int cy = p.latent_channels();
  const Tensor phi = context_features(pass.backbone, y_known, mask, w, p);
  const Tensor psi_at = gather_positions(psi, pass.positions);
  const GaussianField field = entropy_parameters(psi_at, phi, w);

  PassParams out;
  out.mu.resize(static_cast<size_t>(n) * cy);
  out.sigma.resize(static_cast<size_t>(n) * cy);
  if (y_hat_for_symbols != nullptr) {
    out.symbols.resize(static_cast<size_t>(n) * cy);
  }
  const int lw = y_known.dim(2);
  for (int i = 0; i < n; ++i) {
    const int r = pass.positions[i] / lw;
    const int c = pass.positions[i] % lw;
    for (int ch = 0; ch < cy; ++ch) {
      const size_t k = static_cast<size_t>(i) * cy + ch;
      out.mu[k] = field.mu(i, ch);
      out.sigma[k] = field.sigma(i, ch);
      if (y_hat_for_symbols != nullptr) {
        out.symbols[k] = static_cast<int32_t>((*y_hat_for_symbols)(ch, r, c));
      }
    }
  }
  return out;
}

void admit_pass(const Pass& pass, const Tensor& source, Tensor* y_known,
                std::vector<uint8_t>* allowed) {
  const int lw = y_known->dim(2);
  const int cy = y_known->dim(0);
  for (int id : pass.positions) {
    const int r = id / lw;
    const int c = id % lw;
    for (int ch = 0; ch < cy; ++ch) (*y_known)(ch, r, c) = source(ch, r, c);
    (*allowed)[id] = 1;
  }
}

}  // namespace

double bits_per_pixel(size_t payload_bytes, int width, int height) {
  if (width <= 0 || height <= 0) throw DimensionError("bpp: empty image");
  return 8.0 * static_cast<double>(payload_bytes) /
         (static_cast<double>(width) * height);
}

Codec::Codec(const Profile& profile, uint64_t seed)
    : profile_(profile), seed_(seed), weights_(ModelWeights::seeded(profile, seed)) {}

Codec::Codec(const Profile& profile, uint64_t seed, ModelWeights weights)
    : profile_(profile), seed_(seed), weights_(std::move(weights)) {}

Codec Codec::for_container(const Container& c) {
  return Codec(Profile::by_id(c.profile_id), c.seed);
}

EncodeResult Codec::encode(const ImageU8& img, ContextKind kind) const {
  const auto start = Clock::now();
  if (img.width <= 0 || img.height <= 0) throw DimensionError("encode: empty image");
  if (img.width > 0xFFFF || img.height > 0xFFFF) {
    throw DimensionError("encode: image exceeds 65535 pixels per side");
  }

  const Tensor x = image_to_tensor_padded(img);
  const Tensor y = analysis(x, weights_, profile_);
  const int lh = y.dim(1);
  const int lw = y.dim(2);
  const int cy = profile_.latent_channels();

  EncodeResult result;
  result.y_hat = quantize(y);
  const Tensor z = hyper_analysis(y, weights_, profile_);
  result.z_hat = quantize(z);

  Container container;
  container.kind = kind;
  container.profile_id = static_cast<uint8_t>(profile_.id);
  container.seed = seed_;
  container.height = static_cast<uint16_t>(img.height);
  container.width = static_cast<uint16_t>(img.width);

  // Hyper latents: one stream, channel-major, per-channel static models.
  double estimated_bits = 0.0;
  {
    const std::vector<double> scales = hyper_scales(weights_);
    const int zc = result.z_hat.dim(0);
    const int zn = result.z_hat.dim(1) * result.z_hat.dim(2);
    RangeEncoder enc;
    for (int c = 0; c < zc; ++c) {
      const SymbolModel model(0.0, scales[c]);
      const double* plane = result.z_hat.data() + static_cast<size_t>(c) * zn;
      for (int i = 0; i < zn; ++i) {
        const int32_t s = static_cast<int32_t>(plane[i]);
        enc.encode_symbol(model, s);
        const double mu = 0.0;
        estimated_bits += estimate_rate_bits(&s, &mu, &scales[c], 1);
      }
    }
    container.hyper_stream = enc.finish();
  }

  const Tensor psi = hyper_synthesis(result.z_hat, weights_, profile_, lh, lw);
  const Schedule schedule = Schedule::make(kind, lh, lw);

  Tensor y_known = Tensor::zeros({cy, lh, lw});
  CausalMask mask;
  mask.h = lh;
  mask.w = lw;
  mask.allowed.assign(static_cast<size_t>(lh) * lw, 0);

  int zero_context = 0;
  int64_t decoded_so_far = 0;
  for (const Pass& pass : schedule.passes()) {
    mask.queries = pass.positions;
    const PassParams params = pass_parameters(pass, y_known, mask, psi,
                                              weights_, profile_, &result.y_hat);
    RangeEncoder enc;
    for (size_t k = 0; k < params.symbols.size(); ++k) {
      enc.encode_symbol(SymbolModel(params.mu[k], params.sigma[k]),
                        params.symbols[k]);
    }
    container.pass_streams.push_back(enc.finish());
    estimated_bits += estimate_rate_bits(params.symbols.data(), params.mu.data(),
                                         params.sigma.data(),
                                         static_cast<int64_t>(params.symbols.size()));
    if (decoded_so_far == 0) zero_context += static_cast<int>(pass.positions.size());
    decoded_so_far += static_cast<int64_t>(pass.positions.size());
    admit_pass(pass, result.y_hat, &y_known, &mask.allowed);
  }

  result.container = serialize_container(container);
  result.report.payload_bytes = container.payload_bytes();
  result.report.bpp = bits_per_pixel(result.report.payload_bytes, img.width, img.height);
  result.report.pass_count = static_cast<int>(schedule.pass_count());
  result.report.zero_context_count = zero_context;
  result.report.estimated_bits = estimated_bits;
  result.report.latent_h = lh;
  result.report.latent_w = lw;
  result.report.elapsed_ms = ms_since(start);
  return result;
}

DecodeResult Codec::decode(const uint8_t* data, size_t size) const {
  return decode(parse_container(data, size));
}

DecodeResult Codec::decode(const Container& c) const {
  const auto start = Clock::now();
  if (c.profile_id != static_cast<uint8_t>(profile_.id)) {
    throw FormatError("decode: container profile '" +
                      Profile::by_id(c.profile_id).name +
                      "' does not match codec profile '" + profile_.name + "'");
  }
  const int lh = ceil_div(c.height, 16);
  const int lw = ceil_div(c.width, 16);
  const int cy = profile_.latent_channels();

  const Schedule schedule = Schedule::make(c.kind, lh, lw);
  if (c.pass_streams.size() != schedule.pass_count()) {
    throw FormatError("decode: container has " +
                      std::to_string(c.pass_streams.size()) +
                      " pass streams, schedule expects " +
                      std::to_string(schedule.pass_count()));
  }

  // Hyper latents.
  const int mid_h = ceil_div(lh, 2);
  const int mid_w = ceil_div(lw, 2);
  Tensor z_hat = Tensor::zeros({profile_.hyper_channels(), ceil_div(mid_h, 2),
                                ceil_div(mid_w, 2)});
  {
    const std::vector<double> scales = hyper_scales(weights_);
    const int zc = z_hat.dim(0);
    const int zn = z_hat.dim(1) * z_hat.dim(2);
    RangeDecoder dec(c.hyper_stream.data(), c.hyper_stream.size());
    for (int ch = 0; ch < zc; ++ch) {
      const SymbolModel model(0.0, scales[ch]);
      double* plane = z_hat.data() + static_cast<size_t>(ch) * zn;
      for (int i = 0; i < zn; ++i) {
        plane[i] = static_cast<double>(dec.decode_symbol(model));
      }
    }
  }

  const Tensor psi = hyper_synthesis(z_hat, weights_, profile_, lh, lw);

  DecodeResult result;
  result.y_hat = Tensor::zeros({cy, lh, lw});
  Tensor y_known = Tensor::zeros({cy, lh, lw});
  CausalMask mask;
  mask.h = lh;
  mask.w = lw;
  mask.allowed.assign(static_cast<size_t>(lh) * lw, 0);

  int zero_context = 0;
  int64_t decoded_so_far = 0;
  for (size_t t = 0; t < schedule.pass_count(); ++t) {
    const Pass& pass = schedule.passes()[t];
    mask.queries = pass.positions;
    const PassParams params = pass_parameters(pass, y_known, mask, psi,
                                              weights_, profile_, nullptr);
    RangeDecoder dec(c.pass_streams[t].data(), c.pass_streams[t].size());
    const int n = static_cast<int>(pass.positions.size());
    for (int i = 0; i < n; ++i) {
      const int r = pass.positions[i] / lw;
      const int col = pass.positions[i] % lw;
      for (int ch = 0; ch < cy; ++ch) {
        const size_t k = static_cast<size_t>(i) * cy + ch;
        const SymbolModel model(params.mu[k], params.sigma[k]);
        result.y_hat(ch, r, col) = static_cast<double>(dec.decode_symbol(model));
      }
    }
    if (decoded_so_far == 0) zero_context += n;
    decoded_so_far += n;
    admit_pass(pass, result.y_hat, &y_known, &mask.allowed);
  }

  const Tensor x_hat = synthesis(result.y_hat, weights_, profile_);
  result.image = tensor_to_image(x_hat, c.width, c.height);

  result.report.payload_bytes = c.payload_bytes();
  result.report.bpp = bits_per_pixel(result.report.payload_bytes, c.width, c.height);
  result.report.pass_count = static_cast<int>(schedule.pass_count());
  result.report.zero_context_count = zero_context;
  result.report.latent_h = lh;
  result.report.latent_w = lw;
  result.report.elapsed_ms = ms_since(start);
  return result;
}

}  // namespace c3m
