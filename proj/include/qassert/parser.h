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

#ifndef QASSERT_PARSER_H
#define QASSERT_PARSER_H

#include <string_view>

#include "qassert/ast.h"

namespace qassert {

/// Parses the assertion language. Failures throw ParseError carrying the
/// 1-based line and column of the offending token.
Program parse_program(std::string_view text);

}  // namespace qassert

#endif
