/*
 * Copyright 2026 The uqcal Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uqcal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the command line `args` (without the program name). Reports go to
/// --output when given, otherwise to `out`; diagnostics go to `err`.
///
/// Subcommands: evaluate, perturb, benchmark, rank. The benchmark thread
/// count is read from the UQCAL_THREADS environment variable.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uqcal::cli
