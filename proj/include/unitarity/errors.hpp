// Copyright 2026 The Unitarity Project Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace unitarity {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied data (bad matrices, bad parameters, bad shapes).
/// CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionTooSmall : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The Kraus operators fail the trace-nonincreasing condition
/// sum_i E_i^dag E_i <= I. Carries the offending largest eigenvalue.
class NotTraceNonincreasing : public ValidationError {
 public:
  NotTraceNonincreasing(const std::string& what, double max_eigenvalue)
      : ValidationError(what), max_eigenvalue_(max_eigenvalue) {}
  double max_eigenvalue() const { return max_eigenvalue_; }

 private:
  double max_eigenvalue_;
};

/// A measurement probability came out below -tau_psd; the input state is
/// corrupted rather than merely rounded.
class NumericalNegativeProbability : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyBatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyList : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownBuiltin : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BadParams : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Malformed input files / channel spec strings. CLI exit code 4.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failures. CLI exit code 3.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace unitarity
