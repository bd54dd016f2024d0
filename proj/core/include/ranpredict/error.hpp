// Copyright 2026 The ranpredict Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ranpredict {

// Base of every error thrown by the library. The CLI maps the concrete
// subclasses onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters, unresolvable column names, bad run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input file is missing a required column or is otherwise structurally
// unusable.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Serialized model or scaler payload could not be decoded.
class DecodeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Row/column counts disagree between two inputs that must be aligned.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// R^2 requested on a target with zero variance.
class DegenerateTargetError : public Error {
 public:
  using Error::Error;
};

// Operation requested on a model kind that does not support it (e.g. gain
// importance on a linear model).
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace ranpredict
