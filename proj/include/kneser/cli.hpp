#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace kneser::cli {

inline constexpr std::string_view kToolkitVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kRejected = 1, kUsage = 2 };

/// Runs one command line (without the program name). Human output goes to
/// `out`, diagnostics to `err`. Returns 0 on success or accept, 1 on a
/// reject or violation and 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kneser::cli
