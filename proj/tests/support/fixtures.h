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

#ifndef FUZZERAID_TESTS_SUPPORT_FIXTURES_H_
#define FUZZERAID_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>

#include "fuzzeraid/common/error.h"
#include "fuzzeraid/minilang/ast.h"

namespace fuzzeraid::testing {

std::filesystem::path FixturePath(const std::string& relative);
std::string ReadFixture(const std::string& relative);
Bytes ReadFixtureBytes(const std::string& relative);
minilang::Program LoadProgram(const std::string& relative);

// Fresh empty directory under the system temp dir, unique per call.
std::filesystem::path MakeTempDir(const std::string& tag);

}  // namespace fuzzeraid::testing

#endif  // FUZZERAID_TESTS_SUPPORT_FIXTURES_H_
