// cqed-gate: run the multi-target phase gate experiments from a JSON config.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cqed/commands.hpp"

namespace {

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw std::invalid_argument("bad sweep value '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cavity-QED multi-target tunable phase gate simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string mode;
  std::string out_dir;
  std::optional<int> fock_cutoff;
  double ratio = cqed::kDefaultRequiredRatio;
  std::optional<int> m;
  std::string axis;
  std::string values;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "JSON run config")
                    ->check(CLI::ExistingFile);
    if (config_required) opt->required();
    sub->add_option("--mode", mode, "effective or full")
        ->check(CLI::IsMember({"effective", "full"}));
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--fock-cutoff", fock_cutoff, "photon number cutoff")
        ->check(CLI::PositiveNumber);
    sub->add_option("--ratio", ratio, "validator threshold for '>>'")
        ->check(CLI::PositiveNumber);
    sub->add_option("--m", m, "override of the wait integer m")
        ->check(CLI::PositiveNumber);
  };

  auto* truth = app.add_subcommand("truth-table", "phase of every basis input");
  add_common(truth, true);
  auto* qft = app.add_subcommand("qft-demo", "QFT phase layer, effective mode");
  add_common(qft, false);
  auto* sweep = app.add_subcommand("sweep", "fidelity versus one parameter");
  add_common(sweep, true);
  sweep->add_option("--axis", axis, "delta_c, omega_tilde, omega_ref or m")
      ->required()
      ->check(CLI::IsMember(cqed::sweep_axes()));
  sweep->add_option("--values", values, "comma-separated values")->required();
  auto* validate = app.add_subcommand("validate", "regime and timing checks");
  add_common(validate, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cqed::kExitOk : cqed::kExitConfig;
  }

  cqed::RunConfig config;
  try {
    config = config_path.empty() ? cqed::qft_reference_config()
                                 : cqed::load_config(config_path);
    if (!mode.empty()) config.mode = cqed::parse_mode(mode);
    if (fock_cutoff) config.fock_cutoff = *fock_cutoff;
    if (m) config.m = *m;
    if (!out_dir.empty()) config.out_dir = out_dir;
  } catch (const cqed::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cqed::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cqed::kExitConfig;
  }

  try {
    cqed::CommandResult result;
    if (*truth) {
      result = cqed::cmd_truth_table(config);
    } else if (*qft) {
      result = cqed::cmd_qft_demo(config, ratio);
    } else if (*sweep) {
      std::vector<double> points;
      try {
        points = parse_values(values);
      } catch (const std::exception& e) {
        std::cerr << "config error: bad --values: " << e.what() << "\n";
        return cqed::kExitConfig;
      }
      result = cqed::cmd_sweep(config, axis, points);
    } else {
      result = cqed::cmd_validate(config, ratio);
    }
    cqed::write_artifacts(result, config.out_dir);
    std::cout << result.summary;
    for (const auto& a : result.artifacts)
      std::cout << "wrote " << (std::filesystem::path(config.out_dir) / a.name).string()
                << "\n";
    return result.exit_code;
  } catch (const std::invalid_argument& e) {
    // Inconsistent parameters (e.g. an m override too small for t3).
    std::cerr << "config error: " << e.what() << "\n";
    return cqed::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cqed::kExitError;
  }
}
