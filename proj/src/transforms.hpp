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

#ifndef C3M_TRANSFORMS_HPP_
#define C3M_TRANSFORMS_HPP_

#include "profile.hpp"
#include "tensor.hpp"
#include "weights.hpp"

namespace c3m {

// Main analysis transform: x [3 x 16h x 16w] in [0,1] -> latents [C x h x w].
// Four stages of stride-2 conv (relu) followed by windowed-attention blocks.
Tensor analysis(const Tensor& x, const ModelWeights& w, const Profile& p);

// Main synthesis transform: latents [C x h x w] -> [3 x 16h x 16w], clamped
// to [0,1]. Attention blocks run before each stride-2 transposed conv; the
// full transposed output is cropped at the top-left to the doubled extent.
Tensor synthesis(const Tensor& y, const ModelWeights& w, const Profile& p);

// Hyper analysis: latents [C x h x w] -> [Cz x ceil(h/4) x ceil(w/4)].
Tensor hyper_analysis(const Tensor& y, const ModelWeights& w, const Profile& p);

// Hyper synthesis: quantized hyper latents up to side information
// [2C x target_h x target_w]. The caller passes the latent extents because
// ceil division loses them.
Tensor hyper_synthesis(const Tensor& z_hat, const ModelWeights& w, const Profile& p,
                       int target_h, int target_w);

// Layout helpers shared with the tests.
Tensor chw_to_hwc(const Tensor& x);
Tensor hwc_to_chw(const Tensor& x);

}  // namespace c3m

#endif  // C3M_TRANSFORMS_HPP_
