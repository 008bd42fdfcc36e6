// Copyright 2026 The gencache Authors
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

#ifndef GENCACHE_ERRORS_HPP_
#define GENCACHE_ERRORS_HPP_

#include <stdexcept>

namespace gencache {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An instance, graph or service violates a structural invariant.
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

// A service references a page or gap that does not exist.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A service exceeds the cache capacity where a valid one is required.
class InvalidService : public Error {
 public:
  using Error::Error;
};

// The exact solvers refuse inputs beyond their configured limits.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Forced-policy instance containing a request that can never fit.
class InfeasibleInstance : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace gencache

#endif  // GENCACHE_ERRORS_HPP_
