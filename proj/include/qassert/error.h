// Copyright 2026 The qassert Authors
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

#ifndef QASSERT_ERROR_H
#define QASSERT_ERROR_H

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qassert {

enum class ErrorCode {
    NotHermitian,
    NotPSD,
    NotOrthonormal,
    DimensionMismatch,
    IncompleteMeasurement,
    IndexOutOfRange,
    DuplicateIndex,
    EmptyKeepSet,
    SyntaxError,
    UnknownGate,
    QubitOutOfRange,
    NonUnitaryGateDef,
    BadProjectionExpr,
    RankNotPowerOfTwo,
    RankOutOfRange,
    NotNeeded,
    DecompositionMismatch,
    BadAlpha,
    ZeroShots,
    BadArgs,
    ShapeUnderflow,
    BadTarget,
    EigenvalueMismatch,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library. `code()` identifies the contract that
/// was violated; the message carries the detail.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

/// Parse failures additionally carry a 1-based source position.
class ParseError : public Error {
   public:
    ParseError(ErrorCode code, const std::string &message, size_t line, size_t column);

    size_t line() const noexcept {
        return line_;
    }
    size_t column() const noexcept {
        return column_;
    }

   private:
    size_t line_;
    size_t column_;
};

}  // namespace qassert

#endif
