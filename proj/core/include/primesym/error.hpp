// Copyright 2026 The primesym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace primesym {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid field parameters or a reducible / wrong-degree modulus.
class FieldError : public Error {
 public:
  using Error::Error;
};

/// Operands come from two different fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// A request needs coefficients beyond what is known to be final.
class HorizonError : public Error {
 public:
  using Error::Error;
};

/// The requested computation exceeds a hard enumeration or memory budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Invalid user-level parameters (CLI, manifests, hypotheses of a conjecture).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A cache directory was produced for a different field or sum.
class CacheMismatch : public Error {
 public:
  using Error::Error;
};

/// An internal arithmetic invariant failed; always indicates a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace primesym
