// Prints one pass/fail line per acceptance criterion. Criterion 13 drives the
// installed CLI binary as a subprocess.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <sys/wait.h>

#include "wdisp/selftest/criteria.hpp"

#ifndef WDISP_CLI_PATH
#error "WDISP_CLI_PATH must name the wdisp binary"
#endif

namespace {

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

wdisp::CliOutcome run_binary(const std::vector<std::string>& args, const std::string& input) {
  auto in_path = std::filesystem::temp_directory_path() / "wdisp_acceptance_stdin.json";
  {
    std::ofstream f(in_path, std::ios::binary);
    f << input;
  }
  std::string cmd = quote(WDISP_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " < " + quote(in_path.string()) + " 2>/dev/null";
  wdisp::CliOutcome res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

int main() {
  auto results = wdisp::run_criteria(run_binary, true);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << " (" << r.detail << ")\n";
    failed += !r.pass;
  }
  std::cout << (results.size() - std::size_t(failed)) << "/" << results.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
