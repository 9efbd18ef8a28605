#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace testutil {

struct CliResult {
  int status = -1;
  std::string out;
};

// Runs the built CLI with `args` appended; stderr is folded into `out` when asked.
inline CliResult run_cli(const std::string& args, bool with_stderr = false) {
  std::string cmd = std::string("\"") + NAPROOF_CLI + "\" " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  while (auto n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace testutil
