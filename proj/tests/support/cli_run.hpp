#pragma once

// Runs the built cremona binary through the shell and captures stdout.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace gen {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

/// `args` is appended verbatim after the binary path; stderr is discarded.
inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string("'") + CREMONA_CLI_PATH + "' " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace gen
