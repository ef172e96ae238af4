// Copyright 2026 The strengthnet authors
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

#ifndef STRENGTHNET_COMMON_ERROR_HPP_
#define STRENGTHNET_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace strengthnet {

// Violated precondition or malformed input. The CLI maps this family to
// exit code 1.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TooShort : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InsufficientData : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class MissingLabel : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DegenerateChannel : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Non-finite values where finite math was expected. The CLI maps this to
// exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace strengthnet

#endif  // STRENGTHNET_COMMON_ERROR_HPP_
