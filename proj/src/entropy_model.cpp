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

#include "entropy_model.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace c3m {

int quantize_value(double v) {
  const double r = std::round(v);  // halves go away from zero
  if (r < kSymbolMin) return kSymbolMin;
  if (r > kSymbolMax) return kSymbolMax;
  return static_cast<int>(r);
}

Tensor quantize(const Tensor& x) {
  Tensor out(x.shape());
  for (int64_t i = 0; i < x.size(); ++i)
    out.at_flat(i) = static_cast<double>(quantize_value(x.at_flat(i)));
  return out;
}

double normal_cdf(double x) {
  constexpr double kInvSqrt2 = 0.7071067811865476;
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double likelihood(int k, double mu, double sigma) {
  const double inv = 1.0 / sigma;
  const double hi = (k == kSymbolMax)
                        ? 1.0
                        : normal_cdf((static_cast<double>(k) + 0.5 - mu) * inv);
  const double lo = (k == kSymbolMin)
                        ? 0.0
                        : normal_cdf((static_cast<double>(k) - 0.5 - mu) * inv);
  return hi - lo;
}

double estimate_rate_bits(const int32_t* symbols, const double* mu,
                          const double* sigma, int64_t n) {
  constexpr double kFloor = 1.0 / static_cast<double>(kCdfTotal);
  double bits = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    double p = likelihood(symbols[i], mu[i], sigma[i]);
    if (p < kFloor) p = kFloor;
    bits -= std::log2(p);
  }
  return bits;
}

SymbolModel::SymbolModel(double mu, double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("symbol model sigma must be positive");

  std::array<double, kSymbolCount> prob;
  for (int i = 0; i < kSymbolCount; ++i)
    prob[static_cast<size_t>(i)] = likelihood(kSymbolMin + i, mu, sigma);

  std::array<uint32_t, kSymbolCount> mass;
  std::array<double, kSymbolCount> remainder;
  uint32_t assigned = 0;
  for (int i = 0; i < kSymbolCount; ++i) {
    const double scaled = prob[static_cast<size_t>(i)] * kCdfTotal;
    double fl = std::floor(scaled);
    if (fl < 0.0) fl = 0.0;
    if (fl > kCdfTotal) fl = kCdfTotal;
    mass[static_cast<size_t>(i)] = static_cast<uint32_t>(fl);
    remainder[static_cast<size_t>(i)] = scaled - fl;
    assigned += mass[static_cast<size_t>(i)];
  }

  // Distribute the rounding deficit to the largest remainders (ties favor the
  // lower symbol, keeping the construction deterministic).
  if (assigned < kCdfTotal) {
    uint32_t deficit = kCdfTotal - assigned;
    std::array<int, kSymbolCount> order;
    for (int i = 0; i < kSymbolCount; ++i) order[static_cast<size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return remainder[static_cast<size_t>(a)] > remainder[static_cast<size_t>(b)];
    });
    for (uint32_t i = 0; i < deficit; ++i)
      ++mass[static_cast<size_t>(order[i % kSymbolCount])];
  } else if (assigned > kCdfTotal) {
    // Possible only through accumulated floating error; trim from the heaviest.
    uint32_t excess = assigned - kCdfTotal;
    while (excess > 0) {
      int top = 0;
      for (int i = 1; i < kSymbolCount; ++i)
        if (mass[static_cast<size_t>(i)] > mass[static_cast<size_t>(top)]) top = i;
      --mass[static_cast<size_t>(top)];
      --excess;
    }
  }

  // Every symbol must stay codable: raise zero bins to one, borrowing from
  // the heaviest bin each time.
  for (int i = 0; i < kSymbolCount; ++i) {
    if (mass[static_cast<size_t>(i)] != 0) continue;
    int top = 0;
    for (int j = 1; j < kSymbolCount; ++j)
      if (mass[static_cast<size_t>(j)] > mass[static_cast<size_t>(top)]) top = j;
    if (mass[static_cast<size_t>(top)] < 2)
      throw ConfigError("symbol model degenerate: no donor mass");
    --mass[static_cast<size_t>(top)];
    mass[static_cast<size_t>(i)] = 1;
  }

  cdf_[0] = 0;
  for (int i = 0; i < kSymbolCount; ++i)
    cdf_[static_cast<size_t>(i) + 1] = cdf_[static_cast<size_t>(i)] + mass[static_cast<size_t>(i)];
}

int SymbolModel::find(uint32_t target) const {
  // Largest i with cdf_[i] <= target; bins are non-empty so the answer is
  // unique. upper_bound lands on the first entry > target.
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
  const int idx = static_cast<int>(it - cdf_.begin()) - 1;
  return kSymbolMin + std::min(idx, kSymbolCount - 1);
}

}  // namespace c3m
