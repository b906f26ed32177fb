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

#include "qassert/error.h"

namespace qassert {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NotPSD:
            return "NotPSD";
        case ErrorCode::NotOrthonormal:
            return "NotOrthonormal";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::IncompleteMeasurement:
            return "IncompleteMeasurement";
        case ErrorCode::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorCode::DuplicateIndex:
            return "DuplicateIndex";
        case ErrorCode::EmptyKeepSet:
            return "EmptyKeepSet";
        case ErrorCode::SyntaxError:
            return "SyntaxError";
        case ErrorCode::UnknownGate:
            return "UnknownGate";
        case ErrorCode::QubitOutOfRange:
            return "QubitOutOfRange";
        case ErrorCode::NonUnitaryGateDef:
            return "NonUnitaryGateDef";
        case ErrorCode::BadProjectionExpr:
            return "BadProjectionExpr";
        case ErrorCode::RankNotPowerOfTwo:
            return "RankNotPowerOfTwo";
        case ErrorCode::RankOutOfRange:
            return "RankOutOfRange";
        case ErrorCode::NotNeeded:
            return "NotNeeded";
        case ErrorCode::DecompositionMismatch:
            return "DecompositionMismatch";
        case ErrorCode::BadAlpha:
            return "BadAlpha";
        case ErrorCode::ZeroShots:
            return "ZeroShots";
        case ErrorCode::BadArgs:
            return "BadArgs";
        case ErrorCode::ShapeUnderflow:
            return "ShapeUnderflow";
        case ErrorCode::BadTarget:
            return "BadTarget";
        case ErrorCode::EigenvalueMismatch:
            return "EigenvalueMismatch";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

ParseError::ParseError(ErrorCode code, const std::string &message, size_t line, size_t column)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {
}

}  // namespace qassert
