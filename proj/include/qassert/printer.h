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

#ifndef QASSERT_PRINTER_H
#define QASSERT_PRINTER_H

#include <string>

#include "qassert/ast.h"

namespace qassert {

/// 17 significant digits round-trips every double exactly.
inline constexpr int kExactDigits = 17;

std::string format_real(double value, int digits);
std::string format_complex(Complex value, int digits);
std::string format_expr(const ProjExpr &expr, int digits = kExactDigits);

/// Canonical source text. parse_program(print_program(p)) == p when digits
/// is kExactDigits.
std::string print_program(const Program &program, int digits = kExactDigits);

}  // namespace qassert

#endif
