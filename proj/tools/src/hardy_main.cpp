#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hardy/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace hardy::cli;
  CLI::App app{"Weighted Hardy / CKN identity checker for homogeneous groups"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  std::string verify_config;
  std::optional<std::string> only;
  std::optional<std::string> verify_out;
  auto* verify = app.add_subcommand("verify", "Run identity and inequality checks over the configured matrix");
  verify->add_option("--config", verify_config, "Config file")->required();
  verify->add_option("--only", only, "Run a single check");
  verify->add_option("--out", verify_out, "Output directory");

  std::string sharp_config;
  std::optional<std::string> sharp_out;
  auto* sharp = app.add_subcommand("sharpness", "Rayleigh-quotient scans and extremizer sequences");
  sharp->add_option("--config", sharp_config, "Config file")->required();
  sharp->add_option("--out", sharp_out, "Output directory");

  std::vector<std::string> bundles;
  auto* report = app.add_subcommand("report", "Summarise one or more report bundles");
  report->add_option("bundles", bundles, "bundle.json files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  auto as_path = [](const std::optional<std::string>& s) -> std::optional<std::filesystem::path> {
    if (!s) return std::nullopt;
    return std::filesystem::path(*s);
  };
  if (*verify) return cmd_verify(verify_config, only, as_path(verify_out), std::cout, std::cerr);
  if (*sharp) return cmd_sharpness(sharp_config, as_path(sharp_out), std::cout, std::cerr);
  std::vector<std::filesystem::path> paths(bundles.begin(), bundles.end());
  return cmd_report(paths, std::cout, std::cerr);
}
