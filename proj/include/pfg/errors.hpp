// Copyright 2026 The pfg Authors.
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

#ifndef PFG_ERRORS_HPP
#define PFG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pfg {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration or construction would exceed a configured size cap.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the arguments of an operation does not hold.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A game table is not a total function over embedded shapes, or carries
/// an invalid entry.
class MalformedGameError : public Error {
 public:
  using Error::Error;
};

/// Two coalition/partition entries of a general game that should agree
/// under symmetry do not.
class SymmetryViolation : public Error {
 public:
  using Error::Error;
};

/// The operation needs strictly positive or strictly negative externalities.
class UnsupportedSignError : public Error {
 public:
  using Error::Error;
};

/// No belief at the next player count satisfies the admissibility step.
class InfeasibleStepError : public Error {
 public:
  InfeasibleStepError(const std::string& what, int n, int s)
      : Error(what), n_(n), s_(s) {}
  int n() const { return n_; }
  int s() const { return s_; }

 private:
  int n_;
  int s_;
};

/// An allocation does not distribute exactly the grand coalition's worth.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

/// A file or string could not be parsed into a domain object.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace pfg

#endif  // PFG_ERRORS_HPP
