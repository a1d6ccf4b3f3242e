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

#ifndef C3M_ERROR_HPP_
#define C3M_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace c3m {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape or extent disagreement between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Bad configuration: unknown profile, missing parameter, invalid option.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized data (container or weight file framing).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Well-formed framing but the entropy-coded payload cannot be decoded.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace c3m

#endif  // C3M_ERROR_HPP_
