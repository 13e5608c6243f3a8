// Copyright 2026 The Authors.
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

#ifndef FAIRAGG_CLI_H_
#define FAIRAGG_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace fairagg {

// Command-line entry point, callable in-process for tests. args excludes the
// program name. Exit codes: 0 success, 2 input error, 3 infeasible bounds,
// 4 brute-force/enumeration guard breach, 1 unexpected failure.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace fairagg

#endif  // FAIRAGG_CLI_H_
