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

#ifndef FUZZERAID_SIGGEN_SLICE_H_
#define FUZZERAID_SIGGEN_SLICE_H_

#include <cstddef>
#include <vector>

#include "fuzzeraid/common/error.h"
#include "fuzzeraid/minilang/ast.h"
#include "fuzzeraid/minilang/interpreter.h"

namespace fuzzeraid::siggen {

// Keeps every function that owns a traced statement or is called by one,
// plus `main` and all globals, in original order. Untraced statements that
// would no longer compile (for example calls into dropped functions) are
// removed. Throws Error(kSliceNotReproducing) if a traced statement itself
// cannot be kept.
minilang::Program SliceProgram(const minilang::Program& original,
                               const std::vector<minilang::StatementId>& trace);

// Throws Error(kSliceNotReproducing) unless `slice` fails on `input` at the
// same statements as `original` does.
void VerifySlice(const minilang::Program& original, const minilang::Program& slice,
                 const Bytes& input, std::size_t step_budget);

}  // namespace fuzzeraid::siggen

#endif  // FUZZERAID_SIGGEN_SLICE_H_
