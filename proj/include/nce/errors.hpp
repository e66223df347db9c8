/*
   Copyright 2026 The nce Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef NCE_ERRORS_HPP
#define NCE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nce {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: syntax errors, unknown names, mode mismatches, violated
/// preconditions on user-supplied data.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured limit (conductor, word count, coefficient size, degree cap)
/// would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition failed: division by zero, an element that is
/// not an eigenvector, a missing twist, an intersection of the wrong size.
class MathError : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold by construction did not. Always a bug.
class DefectError : public Error {
 public:
  using Error::Error;
};

}  // namespace nce

#endif  // NCE_ERRORS_HPP
