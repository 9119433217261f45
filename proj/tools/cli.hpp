#ifndef SLICELAB_TOOLS_CLI_HPP
#define SLICELAB_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace slicelab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCheckFailed = 3;

/// Runs one command line (without the program name). Results go to `out`
/// unless --output names a file; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a decimal or "p/q" rational in long double precision.
double parse_real(const std::string& text);

}  // namespace slicelab::cli

#endif  // SLICELAB_TOOLS_CLI_HPP
