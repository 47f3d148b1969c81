// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hfce::cli
{

enum ExitCode : int
{
    kOk = 0,
    kFailure = 1,
    kConfigError = 2,
    kIoError = 3,
    kValidationError = 4,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hfce::cli
