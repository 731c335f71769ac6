#ifndef NLWALK_CLI_HPP
#define NLWALK_CLI_HPP

#include <ostream>

namespace nlwalk {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNumeric = 3;

/// Entry point of the nlwalk tool. Summaries go to `out`, diagnostics to
/// `err`. Returns 0 on success, 2 on usage/domain errors, 3 on numerical
/// failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nlwalk

#endif  // NLWALK_CLI_HPP
