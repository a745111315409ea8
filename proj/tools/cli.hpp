#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pythmod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTolerance = 3;

// args excludes the program name. Artifacts go to --out, else to
// $PYTHMOD_OUTPUT_DIR/<subcommand>.<ext>, else to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pythmod::cli
