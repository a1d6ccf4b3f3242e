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

#ifndef C3M_CODEC_HPP_
#define C3M_CODEC_HPP_

#include <cstdint>
#include <limits>
#include <vector>

#include "container.hpp"
#include "image.hpp"
#include "profile.hpp"
#include "schedule.hpp"
#include "tensor.hpp"
#include "weights.hpp"

namespace c3m {

struct CodecReport {
  double bpp = 0.0;
  // NaN until a reference is available; +infinity for exact reconstruction.
  double psnr = std::numeric_limits<double>::quiet_NaN();
  int pass_count = 0;
  int zero_context_count = 0;
  double elapsed_ms = 0.0;
  size_t payload_bytes = 0;
  double estimated_bits = 0.0;  // analytic rate of latents + hyper latents
  int latent_h = 0;
  int latent_w = 0;
};

struct EncodeResult {
  std::vector<uint8_t> container;
  Tensor y_hat;  // quantized latents the decoder must reproduce bit-exactly
  Tensor z_hat;
  CodecReport report;
};

struct DecodeResult {
  ImageU8 image;
  Tensor y_hat;
  CodecReport report;
};

// Pairs a profile with a deterministic weight set. Encode and decode share
// one instance; decode validates the container against the profile but not
// the seed, so mismatched weights yield garbage latents, never a crash.
class Codec {
 public:
  Codec(const Profile& profile, uint64_t seed);
  Codec(const Profile& profile, uint64_t seed, ModelWeights weights);

  EncodeResult encode(const ImageU8& img, ContextKind kind) const;
  DecodeResult decode(const uint8_t* data, size_t size) const;
  DecodeResult decode(const Container& c) const;

  // Builds the codec a container asks for (its profile id and seed).
  static Codec for_container(const Container& c);

  const Profile& profile() const { return profile_; }
  const ModelWeights& weights() const { return weights_; }
  uint64_t seed() const { return seed_; }

 private:
  Profile profile_;
  uint64_t seed_;
  ModelWeights weights_;
};

double bits_per_pixel(size_t payload_bytes, int width, int height);

}  // namespace c3m

#endif  // C3M_CODEC_HPP_
