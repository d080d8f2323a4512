//
// Copyright 2026 The LDPHS Authors
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
//

#ifndef LDPHS_ERRORS_H_
#define LDPHS_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ldphs {

// Base class for every error raised by the library. The CLI maps
// ConfigError/ArgumentError/DimensionError/ValidationError/
// InsufficientSamplesError/UnsupportedSizeError to exit code 2 and
// everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two operands live on domains (or index spaces) of different sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A numeric parameter (epsilon, phi, alpha, ...) is out of range, or a
// named option is unknown.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A function argument violates its precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Input data fails a type invariant (e.g. a row that is not a distribution).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedSizeError : public Error {
 public:
  using Error::Error;
};

class InvalidCertificateError : public Error {
 public:
  using Error::Error;
};

class IncompleteEstimatesError : public Error {
 public:
  using Error::Error;
};

// A resampling loop hit its attempt cap.
class ResamplingExhaustedError : public Error {
 public:
  using Error::Error;
};

// Not enough users to run the protocol; carries the required minimum.
class InsufficientSamplesError : public Error {
 public:
  InsufficientSamplesError(const std::string& what, std::size_t required)
      : Error(what), required_(required) {}
  std::size_t required() const { return required_; }

 private:
  std::size_t required_;
};

}  // namespace ldphs

#endif  // LDPHS_ERRORS_H_
