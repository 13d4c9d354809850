// Copyright 2026 The MQNC Toolkit Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mqnc {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// An operation referenced a qubit that is out of range, dead, or otherwise unusable.
class QubitError : public Error {
 public:
  QubitError(const std::string& message, std::size_t qubit)
      : Error(message + " (qubit " + std::to_string(qubit) + ")"), qubit_(qubit) {}

  std::size_t qubit() const { return qubit_; }

 private:
  std::size_t qubit_;
};

/// Post-selection or sampling left nothing to estimate from.
class EmptySampleError : public Error {
 public:
  explicit EmptySampleError(const std::string& message) : Error(message) {}
};

/// A rewiring plan failed to replay; carries the index of the offending step.
class PlanError : public Error {
 public:
  PlanError(const std::string& message, std::size_t step)
      : Error(message + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace mqnc
