#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace socatt::cli {

/// Bad flags, invalid configuration or unreadable inputs: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Command {
  CLI::App* app;
  std::function<void()> run;
};

/// Registers embed-network, train, eval, homophily, analyze-words and synth.
std::vector<Command> register_commands(CLI::App& app);

}  // namespace socatt::cli
