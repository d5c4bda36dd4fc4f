#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace solitonlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "SOLITONLAB_OUTPUT_DIR";

/// Whole command line, in process. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace solitonlab::cli
