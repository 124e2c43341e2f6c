// Copyright 2026 The qadio Authors

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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qadio {

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorKind {
    InvalidArgument,
    Syntax,
    DimensionMismatch,
    Overflow,
    ResourceExhausted,
    SolverDivergence,
    StepUnderflow,
    Eigensolver,
    Io,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// Parse failure; `position` is a 0-based byte offset into the input text.
class SyntaxError : public Error {
  public:
    SyntaxError(const std::string &what, std::size_t position)
        : Error(ErrorKind::Syntax,
                what + " at position " + std::to_string(position)),
          position_(position) {}

    [[nodiscard]] std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

} // namespace qadio
