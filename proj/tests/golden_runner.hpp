#pragma once

// Loads the golden manifest and replays each row against the command layer.
// Manifest rows: <golden-file>|<expected-exit>|<command>[|flag=value...]

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <catprob/commands.hpp>
#include <catprob/workspace.hpp>

namespace goldenrun {

struct GoldenCase {
  std::string file;
  int expected_exit = 0;
  std::string command;
  std::map<std::string, std::string> flags;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::vector<GoldenCase> load_manifest(const std::string& dir) {
  std::istringstream lines(read_file(dir + "/manifest.txt"));
  std::vector<GoldenCase> cases;
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream cols(line);
    std::string field;
    while (std::getline(cols, field, '|')) fields.push_back(field);
    GoldenCase gc;
    gc.file = fields.at(0);
    gc.expected_exit = std::stoi(fields.at(1));
    gc.command = fields.at(2);
    for (std::size_t i = 3; i < fields.size(); ++i) {
      const auto eq = fields[i].find('=');
      gc.flags[fields[i].substr(0, eq)] = fields[i].substr(eq + 1);
    }
    cases.push_back(std::move(gc));
  }
  return cases;
}

struct GoldenMismatch {
  std::string file;
  std::string what;
};

// Replays every manifest row in process; returns the mismatches.
inline std::vector<GoldenMismatch> run_in_process(const std::string& dir) {
  const auto ws = catprob::parse_workspace(read_file(dir + "/workspace.cp"));
  std::vector<GoldenMismatch> bad;
  for (const auto& gc : load_manifest(dir)) {
    const auto res = catprob::run_command(ws, gc.command, gc.flags);
    const auto expected = read_file(dir + "/" + gc.file);
    if (res.output != expected) {
      bad.push_back({gc.file, "stdout differs"});
    } else if (res.exit_code != gc.expected_exit) {
      bad.push_back({gc.file, "exit " + std::to_string(res.exit_code) + " != " +
                                  std::to_string(gc.expected_exit)});
    }
  }
  return bad;
}

// Replays every manifest row through the installed binary named by the
// CATPROB_CLI environment variable; returns mismatches, or nullopt when the
// variable is unset.
inline std::vector<GoldenMismatch> run_subprocess(const std::string& dir,
                                                  const std::string& cli) {
  std::vector<GoldenMismatch> bad;
  for (const auto& gc : load_manifest(dir)) {
    std::string cmd = cli + " " + dir + "/workspace.cp " + gc.command;
    for (const auto& [flag, value] : gc.flags) {
      cmd += " --" + flag;
      if (!value.empty()) cmd += " " + value;
    }
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
      bad.push_back({gc.file, "popen failed"});
      continue;
    }
    std::string output;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
    const int status = pclose(pipe);
    const int exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    const auto expected = read_file(dir + "/" + gc.file);
    if (output != expected) {
      bad.push_back({gc.file, "stdout differs via subprocess"});
    } else if (exit_code != gc.expected_exit) {
      bad.push_back({gc.file, "subprocess exit " + std::to_string(exit_code) + " != " +
                                  std::to_string(gc.expected_exit)});
    }
  }
  return bad;
}

}  // namespace goldenrun
