#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

namespace skh::cli {

struct Options {
  bool json = false;
  bool timing = false;
  bool both = false;  // jones: also print the homological Euler characteristic
  int max_crossings = 16;
  std::filesystem::path fixtures;
};

/// Text written to stdout plus the process exit code:
/// 0 success, 1 bad input or failed check, 2 internal invariant failure.
struct Outcome {
  int exit_code = 0;
  std::string output;
  std::string error;
};

Outcome cmd_compute(const std::string& input, const Options& options);
Outcome cmd_verify(const std::string& suite, const Options& options);
Outcome cmd_jones(const std::string& input, const Options& options);
Outcome cmd_braid(int strands, const std::string& word);

/// Full command line front end.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace skh::cli
