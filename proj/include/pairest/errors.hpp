// Copyright 2026 The pairest Authors
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

namespace pairest {

/// Raised when a computation cannot produce a finite, trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Joint-estimation quantity requested at a point where it is undefined,
/// e.g. the pure-state boundary phi1 = 0 where Q11 = F11 = 0.
class SingularPointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Likelihood maximisation left the identifiable parameter region.
class BoundaryFitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Invalid sweep or Monte-Carlo configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pairest
