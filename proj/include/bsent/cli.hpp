// Copyright 2026 The bsent Authors
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

#pragma once

// Command-line front end: `state`, `apply`, `report`, `sweep` and `verify`.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bsent/io.hpp"

namespace bsent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitClaimFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCutoff = 3;

/// Largest n_max tried when --nmax is not given.
inline constexpr int kAutoCutoffCap = 160;

inline constexpr const char* kSweepVersionLine = "# bsent-sweep v1";
inline constexpr const char* kSweepHeader = "theta,e_p,negativity,min_pt_eigenvalue";

/// A descriptor given on the command line: either JSON text, or
/// "kind:key=value,key=value" with list values separated by '/',
/// e.g. "coherent:alpha=1+0.5i" or "unpolarized:lambda=0.5/0.25".
Json descriptor_from_text(std::string_view text);

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace bsent::cli
