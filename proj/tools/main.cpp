#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "commands.hpp"
#include "json_config.hpp"
#include "socatt/log.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Social-attention sentiment classification toolkit"};
  app.name("socatt");
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file of option values; flags given on the command line win");
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Print progress messages to stderr");

  const auto commands = socatt::cli::register_commands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (verbose)
    socatt::set_log_sink([](socatt::LogLevel level, std::string_view message) {
      std::cerr << (level == socatt::LogLevel::warning ? "warning: " : "") << message << '\n';
    });

  try {
    for (const auto& c : commands)
      if (c.app->parsed()) c.run();
  } catch (const socatt::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
