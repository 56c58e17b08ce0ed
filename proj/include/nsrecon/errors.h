// Copyright 2026 The nsrecon Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NSRECON_ERRORS_H_
#define NSRECON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace nsrecon {

// Raised when a configuration or argument violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a random draw does not yield a usable frame: an empty sample
// bin, or a frame operator whose smallest eigenvalue is below tolerance.
// These are expected, probabilistic events and are counted per trial.
class FrameFailure : public std::runtime_error {
 public:
  FrameFailure(const std::string& what, double lambda_min)
      : std::runtime_error(what), lambda_min_(lambda_min) {}

  double lambda_min() const { return lambda_min_; }

 private:
  double lambda_min_;
};

}  // namespace nsrecon

#endif  // NSRECON_ERRORS_H_
