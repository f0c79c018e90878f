// Copyright 2026 The FuzzerAid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FUZZERAID_MINILANG_PARSER_H_
#define FUZZERAID_MINILANG_PARSER_H_

#include <string_view>

#include "fuzzeraid/minilang/ast.h"

namespace fuzzeraid::minilang {

enum class ParseMode {
  kLibrary,     // any set of functions, including none
  kExecutable,  // additionally requires `main`
};

// Parses `.ml-src` text. Throws ParseError with code kSyntaxError,
// kDuplicateFunction or (kExecutable only) kMissingMain.
Program Parse(std::string_view source, ParseMode mode = ParseMode::kLibrary);

}  // namespace fuzzeraid::minilang

#endif  // FUZZERAID_MINILANG_PARSER_H_
