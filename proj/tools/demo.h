// Copyright 2026 The bellcert Authors
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

// End-to-end walkthroughs: construct a functional, search its symmetries,
// certify, optimize, and cross-check the certificate against the optimizer
// output. Each transcript ends with a "conclusion" object.

#ifndef BELLCERT_TOOLS_DEMO_H_
#define BELLCERT_TOOLS_DEMO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "bellcert/json_io.h"

namespace bellcert::cli {

struct DemoOptions {
  std::uint64_t seed = 0;
  int restarts = 20;
};

/// chsh, tilted, chained-local, chained-global, mermin-odd, mermin-even,
/// lifted.
const std::vector<std::string>& demo_names();

/// Throws Error(kInvalidArgument) for an unknown name.
Json run_demo(const std::string& name, const DemoOptions& options = {});

}  // namespace bellcert::cli

#endif  // BELLCERT_TOOLS_DEMO_H_
