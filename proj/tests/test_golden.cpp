#include "golden_cases.hpp"
#include "scatterlab/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

namespace golden = scatterlab::golden;
namespace cli = scatterlab::cli;

// Set SCATTERLAB_UPDATE_GOLDEN=1 to rewrite the expected files.
TEST(Golden, InvocationsMatchByteForByte) {
  const std::string dir = SCATTERLAB_GOLDEN_DIR;
  const bool update = std::getenv("SCATTERLAB_UPDATE_GOLDEN") != nullptr;
  const auto cases = golden::load_cases(dir);
  ASSERT_GE(cases.size(), 20u);
  for (const auto& c : cases) {
    const auto report = cli::run_line(c.line);
    const auto actual = report.out + report.err;
    const auto path = dir + "/" + c.name + ".txt";
    if (update) {
      std::ofstream(path, std::ios::binary) << actual;
      continue;
    }
    EXPECT_EQ(report.exit_code, c.exit_code) << c.line;
    EXPECT_EQ(actual, golden::read_file(path)) << c.line;
  }
}
