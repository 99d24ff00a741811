#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRefused = 2;

// Runs one command line. args excludes the program name. Output that is not
// redirected with --out goes to `out`; diagnostics and usage go to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

} // namespace twlab
