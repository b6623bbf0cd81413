#include <cstdio>
#include <string>
#include <vector>

#include "prelie/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  prelie::CliResult result = prelie::cli_run(args);
  std::fputs(result.report.c_str(), stdout);
  return result.status;
}
