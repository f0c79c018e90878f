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

#include "fuzzeraid/common/error.h"

namespace fuzzeraid {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kDuplicateFunction: return "DuplicateFunction";
    case ErrorCode::kMissingMain: return "MissingMain";
    case ErrorCode::kInvalidProgram: return "InvalidProgram";
    case ErrorCode::kSliceNotReproducing: return "SliceNotReproducing";
    case ErrorCode::kNotReproducing: return "NotReproducing";
    case ErrorCode::kUnmappableFrame: return "UnmappableFrame";
    case ErrorCode::kNotACrash: return "NotACrash";
    case ErrorCode::kSeedNotCrashing: return "SeedNotCrashing";
    case ErrorCode::kLabelMissing: return "LabelMissing";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kFormatError: return "FormatError";
  }
  return "Unknown";
}

}  // namespace fuzzeraid
