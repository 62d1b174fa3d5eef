// Copyright 2026 The qcutoff Authors
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

namespace qcutoff {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Wrong matrix shape: non-square input, mismatched dimensions.
class ShapeError : public Error {
public:
  using Error::Error;
};

// Argument outside the operation's domain (negative time, nu >= gap, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// A model that is not a valid GKLS generator or a malformed model file.
class ModelError : public Error {
public:
  using Error::Error;
};

class HamiltonianError : public ModelError {
public:
  using ModelError::ModelError;
};

// Schema violation in a model file. path() names the offending field.
class SchemaError : public ModelError {
public:
  SchemaError(std::string path, const std::string& what)
      : ModelError(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

// Eigen-solver failure, ambiguous rank decision, defective peripheral
// spectrum and similar numerical pathologies.
class NumericalError : public Error {
public:
  using Error::Error;
};

// Explicit matrix would exceed the desk-scale cap.
class CapExceeded : public Error {
public:
  using Error::Error;
};

}  // namespace qcutoff
