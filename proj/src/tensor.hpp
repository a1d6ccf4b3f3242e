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

#ifndef C3M_TENSOR_HPP_
#define C3M_TENSOR_HPP_

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace c3m {

// Dense row-major tensor of 64-bit floats. All arithmetic in the codec runs
// through this type; loops everywhere use a fixed order so a given input
// produces bit-identical output on every run.
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
    int64_t n = 1;
    for (int d : shape_) {
      if (d < 0) throw DimensionError("tensor extent must be non-negative");
      n *= d;
    }
    data_.assign(static_cast<size_t>(n), 0.0);
  }

  static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }

  static Tensor full(std::vector<int> shape, double v) {
    Tensor t(std::move(shape));
    for (double& x : t.data_) x = v;
    return t;
  }

  int rank() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }

  int dim(int i) const {
    assert(i >= 0 && i < rank());
    return shape_[static_cast<size_t>(i)];
  }

  int64_t size() const { return static_cast<int64_t>(data_.size()); }

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double& operator()(int i) {
    assert(rank() == 1);
    return data_[idx1(i)];
  }
  double operator()(int i) const {
    assert(rank() == 1);
    return data_[idx1(i)];
  }
  double& operator()(int i, int j) { return data_[idx2(i, j)]; }
  double operator()(int i, int j) const { return data_[idx2(i, j)]; }
  double& operator()(int i, int j, int k) { return data_[idx3(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[idx3(i, j, k)]; }
  double& operator()(int i, int j, int k, int l) { return data_[idx4(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return data_[idx4(i, j, k, l)]; }

  // Flat access, useful for elementwise passes.
  double& at_flat(int64_t i) { return data_[static_cast<size_t>(i)]; }
  double at_flat(int64_t i) const { return data_[static_cast<size_t>(i)]; }

  std::string shape_string() const {
    std::string s = "[";
    for (size_t i = 0; i < shape_.size(); ++i) {
      if (i) s += "x";
      s += std::to_string(shape_[i]);
    }
    return s + "]";
  }

 private:
  size_t idx1(int i) const {
    assert(i >= 0 && i < shape_[0]);
    return static_cast<size_t>(i);
  }
  size_t idx2(int i, int j) const {
    assert(rank() == 2 && i >= 0 && i < shape_[0] && j >= 0 && j < shape_[1]);
    return static_cast<size_t>(i) * shape_[1] + j;
  }
  size_t idx3(int i, int j, int k) const {
    assert(rank() == 3 && i >= 0 && i < shape_[0] && j >= 0 && j < shape_[1] &&
           k >= 0 && k < shape_[2]);
    return (static_cast<size_t>(i) * shape_[1] + j) * shape_[2] + k;
  }
  size_t idx4(int i, int j, int k, int l) const {
    assert(rank() == 4 && i >= 0 && i < shape_[0] && j >= 0 && j < shape_[1] &&
           k >= 0 && k < shape_[2] && l >= 0 && l < shape_[3]);
    return ((static_cast<size_t>(i) * shape_[1] + j) * shape_[2] + k) * shape_[3] + l;
  }

  std::vector<int> shape_;
  std::vector<double> data_;
};

}  // namespace c3m

#endif  // C3M_TENSOR_HPP_
