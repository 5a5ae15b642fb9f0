#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinsim/spin.hpp"

namespace spinsim::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kVerificationFailure = 2 };

/// Bad flag value; the message names the flag.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// "x,y,z" -> normalised direction. Rejects malformed text and norms below 1e-6.
UnitVector3 parse_direction(const std::string& text, const std::string& flag);

/// Resolves --a/--b/--theta. With --theta, a = z and b = (sin t, 0, cos t). Defaults to theta = 0.
std::pair<UnitVector3, UnitVector3> resolve_directions(const std::optional<std::string>& a,
                                                       const std::optional<std::string>& b,
                                                       const std::optional<double>& theta);

/// Entry point for the `spinsim` tool. Subcommands: oracle, simulate, sweep, verify.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinsim::cli
