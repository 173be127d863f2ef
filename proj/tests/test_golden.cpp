#include "doctest.h"

#include <cstdlib>

#include "golden_runner.hpp"

namespace {
const std::string kDir = CATPROB_GOLDEN_DIR;
}

TEST_CASE("golden outputs are byte-identical in process") {
  const auto bad = goldenrun::run_in_process(kDir);
  for (const auto& b : bad) {
    FAIL_CHECK(b.file << ": " << b.what);
  }
  CHECK(bad.empty());
}

TEST_CASE("golden outputs are byte-identical through the binary") {
  const char* cli = std::getenv("CATPROB_CLI");
  if (!cli || !*cli) {
    MESSAGE("CATPROB_CLI not set; skipping the subprocess pass");
    return;
  }
  const auto bad = goldenrun::run_subprocess(kDir, cli);
  for (const auto& b : bad) {
    FAIL_CHECK(b.file << ": " << b.what);
  }
  CHECK(bad.empty());
}

TEST_CASE("the binary rejects usage errors with exit two") {
  const char* cli = std::getenv("CATPROB_CLI");
  if (!cli || !*cli) {
    MESSAGE("CATPROB_CLI not set; skipping the subprocess pass");
    return;
  }
  const std::string ws = kDir + "/workspace.cp";
  const auto run = [&](const std::string& args) {
    FILE* pipe = popen((std::string(cli) + " " + args + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (fread(buf, 1, sizeof buf, pipe) > 0) {
    }
    const int status = pclose(pipe);
    return (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  };
  CHECK(run("") == 2);
  CHECK(run(ws) == 2);
  CHECK(run(ws + " check --seed") == 2);
  CHECK(run(ws + " check stray") == 2);
  CHECK(run(ws + " check --seed 1 --seed 2") == 2);
  CHECK(run("/nonexistent.cp check") == 2);
}
