// Copyright 2026 The salvq Authors. All Rights Reserved.
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

#ifndef SALVQ_TOOLS_CLI_H_
#define SALVQ_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace salvq::cli {

// Runs one command line (args excludes the program name). Exit codes: 0 on
// success, 1 on a processing error, 2 on a usage error. Diagnostics go to
// err; only `info` and help text write to out.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace salvq::cli

#endif  // SALVQ_TOOLS_CLI_H_
