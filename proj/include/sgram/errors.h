// Copyright 2026 The Sgram Authors. All Rights Reserved.
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

#ifndef SGRAM_ERRORS_H_
#define SGRAM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sgram {

// Non-finite values appeared in the dynamics or in gradients. Mapped to
// exit code 4 by the CLI.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A filter response underflowed to numerically zero and cannot be
// normalized.
class DegenerateFilterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File-level failures. Mapped to exit code 3 by the CLI.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedWavError : public IoError {
 public:
  using IoError::IoError;
};

class UnsupportedWavError : public IoError {
 public:
  using IoError::IoError;
};

class SampleRateMismatchError : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace sgram

#endif  // SGRAM_ERRORS_H_
