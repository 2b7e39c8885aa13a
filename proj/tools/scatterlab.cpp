#include "scatterlab/cli.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  namespace cli = scatterlab::cli;
  if (argc < 2 || std::string(argv[1]) == "--help" || std::string(argv[1]) == "-h") {
    std::cerr << cli::usage_text();
    return argc < 2 ? cli::exit_code::usage : cli::exit_code::ok;
  }
  std::string line;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) line += ' ';
    line += argv[i];
  }
  std::optional<std::int64_t> cap;
  try {
    cap = cli::budget_cap_from_env();
  } catch (const scatterlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code::usage;
  }
  const auto report = cli::run_line(line, cap);
  std::cout << report.out;
  std::cerr << report.err;
  return report.exit_code;
}
