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

#ifndef C3M_ENTROPY_MODEL_HPP_
#define C3M_ENTROPY_MODEL_HPP_

#include <array>
#include <cstdint>

#include "tensor.hpp"

namespace c3m {

// Symbol alphabet: integers in [-128, 127]. Probability mass outside the
// support folds into the end bins, so every model sums to one exactly.
constexpr int kSymbolMin = -128;
constexpr int kSymbolMax = 127;
constexpr int kSymbolCount = 256;

// Scale clamp applied wherever a sigma is produced from a raw parameter.
constexpr double kSigmaMin = 0.04;
constexpr double kSigmaMax = 256.0;

// Total quantized probability mass of a symbol model (16-bit coder precision).
constexpr uint32_t kCdfTotal = 1u << 16;

// Round half away from zero, clamp to the symbol support.
int quantize_value(double v);
// Elementwise; the result holds exact integers.
Tensor quantize(const Tensor& x);

double normal_cdf(double x);

// P(round(Y) == k) for Y ~ N(mu, sigma^2), with tails folded into the end
// bins: Phi((k+.5-mu)/s) - Phi((k-.5-mu)/s) in the interior.
double likelihood(int k, double mu, double sigma);

// Sum of -log2 likelihood over symbols, the analytic cost of coding them.
// Likelihoods floor at 1/2^16: the coder's probability resolution caps what a
// symbol can actually cost, and the estimate mirrors that.
double estimate_rate_bits(const int32_t* symbols, const double* mu,
                          const double* sigma, int64_t n);

// Quantized CDF of the discretized Gaussian: 257 monotone entries from 0 to
// 65536 with every bin mass >= 1. Built with largest-remainder rounding; zero
// bins then borrow from the heaviest bin.
class SymbolModel {
 public:
  SymbolModel(double mu, double sigma);

  uint32_t cum(int symbol) const { return cdf_[index(symbol)]; }
  uint32_t freq(int symbol) const {
    const int i = index(symbol);
    return cdf_[i + 1] - cdf_[i];
  }
  // Largest symbol whose cumulative start is <= target (target < kCdfTotal).
  int find(uint32_t target) const;

  const std::array<uint32_t, kSymbolCount + 1>& cdf() const { return cdf_; }

 private:
  static int index(int symbol) { return symbol - kSymbolMin; }
  std::array<uint32_t, kSymbolCount + 1> cdf_;
};

}  // namespace c3m

#endif  // C3M_ENTROPY_MODEL_HPP_
