// Copyright 2026 The morphclass Authors.
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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mc {

/// Class identifier. Valid labels are 1..L; 0 is reserved (padding, "none").
using Label = std::uint16_t;

inline constexpr Label kNoLabel = 0;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: unreadable file, malformed text, dimension mismatch, invalid
/// parameter value. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized stream. `position` is the offset of the offending
/// token or character.
class FormatError : public InputError {
 public:
  FormatError(const std::string& what, std::size_t position)
      : InputError(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace mc
