// Copyright 2026 The hmsim Authors
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

#ifndef HMS_ERRORS_HPP
#define HMS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hms {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
   public:
    using Error::Error;
};

class DegenerateSpanError : public Error {
   public:
    using Error::Error;
};

class NormalizationError : public Error {
   public:
    using Error::Error;
};

class EmptyTensorError : public Error {
   public:
    using Error::Error;
};

/// An argument lies outside the mathematical domain of an operation
/// (a probability outside [0,1], a nonpositive lambda, ...).
class DomainError : public Error {
   public:
    using Error::Error;
};

/// Two histories were combined although their temporal supports differ.
class SupportError : public Error {
   public:
    using Error::Error;
};

/// A family of histories that must be pairwise orthogonal is not.
/// Carries the indices of the first offending pair.
class DisjointnessError : public Error {
   public:
    DisjointnessError(std::string message, std::size_t first, std::size_t second)
        : Error(std::move(message)), first_(first), second_(second) {}

    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

   private:
    std::size_t first_;
    std::size_t second_;
};

/// A trajectory was requested for an outcome that has zero probability.
class InfeasibleError : public Error {
   public:
    using Error::Error;
};

}  // namespace hms

#endif  // HMS_ERRORS_HPP
