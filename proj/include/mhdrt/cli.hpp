// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace mhdrt {

// Batch driver behind the `mhdrt` executable.  `args` excludes the program
// name.  Subcommands: critical, dispersion, evolve, verify.  Returns the
// process exit code: 0 on success, 1 on domain errors, 2 on usage errors.
int run_command(const std::vector<std::string>& args);

}  // namespace mhdrt
