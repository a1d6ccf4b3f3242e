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

#ifndef C3M_NN_HPP_
#define C3M_NN_HPP_

#include "tensor.hpp"

namespace c3m {

// Geometry of a 2-d convolution. For the forward direction the output extent
// is floor((in + 2*padding - kernel) / stride) + 1; for the transposed
// direction it is (in - 1) * stride + kernel - 2*padding.
struct ConvSpec {
  int kernel_h = 3;
  int kernel_w = 3;
  int stride = 1;
  int padding = 0;
  int in_channels = 0;
  int out_channels = 0;

  int out_extent(int in, int kernel) const {
    return (in + 2 * padding - kernel) / stride + 1;
  }
  int transposed_extent(int in, int kernel) const {
    return (in - 1) * stride + kernel - 2 * padding;
  }
};

// a: [M x K], b: [K x N] -> [M x N].
Tensor matmul(const Tensor& a, const Tensor& b);

// a: [M x K], b: [N x K] -> a * b^T, [M x N]. Convenience wrapper used by the
// attention kernels; internally transposes b and calls matmul.
Tensor matmul_nt(const Tensor& a, const Tensor& b);

// x: [Cin x H x W], w: [Cout x Cin x kh x kw], bias: [Cout].
// Cross-correlation with zero padding.
Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& bias,
              const ConvSpec& spec);

// Transposed counterpart: scatters each input position into a kernel-sized
// output patch. Same weight layout as conv2d.
Tensor conv_transpose2d(const Tensor& x, const Tensor& w, const Tensor& bias,
                        const ConvSpec& spec);

// x: [N x d], gain/shift: [d]. Normalizes each row to zero mean and unit
// variance (epsilon 1e-6 added to the variance), then applies gain and shift.
Tensor layer_norm(const Tensor& x, const Tensor& gain, const Tensor& shift);

// Softmax along `axis` with max subtraction for stability.
Tensor softmax(const Tensor& x, int axis);

// Row-wise fully connected layer: x [N x in], w [out x in], b [out] -> [N x out].
Tensor linear(const Tensor& x, const Tensor& w, const Tensor& b);
// Same without bias.
Tensor linear_nb(const Tensor& x, const Tensor& w);

double gelu(double x);  // tanh approximation
void gelu_inplace(Tensor& x);
void relu_inplace(Tensor& x);

constexpr double kLayerNormEpsilon = 1e-6;

}  // namespace c3m

#endif  // C3M_NN_HPP_
