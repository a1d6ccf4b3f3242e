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

#ifndef C3M_CONTEXT_HPP_
#define C3M_CONTEXT_HPP_

#include <cstdint>
#include <vector>

#include "profile.hpp"
#include "schedule.hpp"
#include "tensor.hpp"
#include "weights.hpp"

namespace c3m {

// Which latent positions are already decoded (allowed) and which positions
// the current pass wants context features for (queries). Queries are always
// outside the allowed set.
struct CausalMask {
  int h = 0, w = 0;
  std::vector<uint8_t> allowed;  // h*w flags
  std::vector<int> queries;      // flat ids, row-major pass order

  bool any_allowed() const {
    for (uint8_t a : allowed)
      if (a) return true;
    return false;
  }
};

// Context features have twice the latent channel count, mirroring the
// mean/scale pairing of the side information.
inline int context_channels(const Profile& p) { return 2 * p.latent_channels(); }

// Masked transformer over all h*w grid positions. Tokens embed the decoded
// value vector (zeros where undecoded) plus an "unknown" flag channel;
// attention is masked so every token attends only to allowed positions, with
// clipped relative-position biases per head. Values at non-allowed positions
// never enter the computation, so perturbing them cannot change the output.
// Returns features at the query positions: [|queries| x 2C].
// Calling with a non-empty query set and an empty allowed set is a contract
// violation and throws.
Tensor masked_transformer_context(const Tensor& y_partial,  // [C x h x w]
                                  const CausalMask& mask,
                                  const ModelWeights& weights,
                                  const Profile& profile);

// 3x3 convolution over the decoded latents with undecoded positions zeroed
// (equivalent to masking kernel taps that would read them). The conv runs
// over the full grid, as a convolutional layer does; queries select outputs.
// A query with no decoded neighbor in its 3x3 window receives exactly the
// bias vector. Returns [|queries| x 2C].
Tensor masked_conv_context(const Tensor& y_partial, const CausalMask& mask,
                           const ModelWeights& weights);

// Zero features for passes that decode blind. [|queries| x 2C].
Tensor zero_context(const CausalMask& mask, const Profile& profile);

// Dispatch on the pass backbone.
Tensor context_features(Backbone backbone, const Tensor& y_partial,
                        const CausalMask& mask, const ModelWeights& weights,
                        const Profile& profile);

struct GaussianField {
  Tensor mu;     // [N x C], one row per query position
  Tensor sigma;  // same shape, clamped to [kSigmaMin, kSigmaMax]
};

// Two 1x1 layers over concat(psi, phi) at each query position. psi_at and
// phi_at are [N x 2C]; the head emits mean and raw scale per latent channel,
// with sigma = exp(clamp(raw, ln sigma_min, ln sigma_max)).
GaussianField entropy_parameters(const Tensor& psi_at, const Tensor& phi_at,
                                 const ModelWeights& weights);

// Gathers channel vectors of a [C x h x w] tensor at flat positions -> [N x C].
Tensor gather_positions(const Tensor& grid, const std::vector<int>& ids);

}  // namespace c3m

#endif  // C3M_CONTEXT_HPP_
