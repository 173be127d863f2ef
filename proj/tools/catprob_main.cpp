#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "catprob/commands.hpp"
#include "catprob/error.hpp"

namespace {

constexpr const char* kUsage =
    "usage: catprob <workspace-file> <command> [--flag value ...]\n"
    "commands: check, compose, pushforward, bind, integrate, bounded, normalize,\n"
    "          chi, product, laws stoch, laws monad, laws naturality, opposite,\n"
    "          functor-check, nattrans-check\n";

int fail_usage(const std::string& message) {
  std::printf("error[ParseError]: %s\n%s", message.c_str(), kUsage);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fputs(kUsage, stderr);
    return 2;
  }
  const std::string path = argv[1];
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::printf("error[IoError]: cannot read '%s'\n", path.c_str());
    return 2;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  std::string command;
  int i = 2;
  for (; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--", 0) == 0) break;
    if (!command.empty()) command += ' ';
    command += arg;
  }
  if (command.empty()) return fail_usage("missing command");

  std::map<std::string, std::string> flags;
  for (; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--", 0) != 0 || arg.size() == 2) {
      return fail_usage("unexpected argument '" + arg + "'");
    }
    const std::string name = arg.substr(2);
    std::string value;
    if (i + 1 < argc && std::string(argv[i + 1]).rfind("--", 0) != 0) {
      value = argv[++i];
    }
    if (!flags.emplace(name, value).second) {
      return fail_usage("duplicate flag --" + name);
    }
  }

  try {
    const catprob::Workspace ws = catprob::parse_workspace(buffer.str());
    const catprob::CommandResult result = catprob::run_command(ws, command, flags);
    std::fputs(result.output.c_str(), stdout);
    return result.exit_code;
  } catch (const catprob::Error& e) {
    std::printf("error[%s]: %s\n", e.code().c_str(), e.message().c_str());
    return 2;
  }
}
