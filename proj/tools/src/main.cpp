#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mcs/cli/commands.hpp"
#include "mcs/cli/config.hpp"
#include "mcs/errors.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::optional<std::string> svg;
  std::optional<std::string> steps_trace;
  std::vector<std::string> overrides;
  std::optional<std::string> corrupt;
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config_path, "JSON configuration file");
  cmd.add_option("--seed", f.seed, "run seed (overrides the config)");
  cmd.add_option("--out", f.out, "output directory")->capture_default_str();
  cmd.add_option("--svg", f.svg, "emit SVG charts")->check(CLI::IsMember({"on", "off"}));
  cmd.add_option("--steps-trace", f.steps_trace, "emit the per-step CSV")->check(CLI::IsMember({"on", "off"}));
  cmd.add_option("--set", f.overrides, "override a config key, e.g. --set train.episodes=50");
}

nlohmann::json resolve_document(const Flags& f) {
  nlohmann::json doc = f.config_path.empty() ? nlohmann::json::object() : mcs::cli::load_config_file(f.config_path);
  for (const std::string& o : f.overrides) mcs::cli::apply_override(doc, o);
  if (f.seed) doc["seed"] = *f.seed;
  if (f.svg) doc["output"]["svg"] = (*f.svg == "on");
  if (f.steps_trace) doc["output"]["steps_trace"] = (*f.steps_trace == "on");
  if (f.corrupt) doc["gradcheck"]["corrupt"] = *f.corrupt;
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg pricing experiments for mobile crowdsensing"};
  app.require_subcommand(1);
  Flags flags;

  CLI::App* static_cmd = app.add_subcommand("static", "solve the static equilibrium");
  CLI::App* train_cmd = app.add_subcommand("train", "train the dynamic pricing agent and compare baselines");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "comparative statics over one parameter");
  CLI::App* grad_cmd = app.add_subcommand("gradcheck", "finite-difference check of every analytic derivative");
  for (CLI::App* cmd : {static_cmd, train_cmd, sweep_cmd, grad_cmd}) add_flags(*cmd, flags);
  grad_cmd->add_option("--corrupt", flags.corrupt, "perturb one check's analytic gradient (suite self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mcs::cli::kExitConfig;
  }

  try {
    const bool needs_scenario = !grad_cmd->parsed();
    const mcs::cli::RunConfig config = mcs::cli::build_config(resolve_document(flags), needs_scenario);
    const std::filesystem::path out(flags.out);
    if (static_cmd->parsed()) return mcs::cli::cmd_static(config, out, std::cerr);
    if (train_cmd->parsed()) return mcs::cli::cmd_train(config, out, std::cerr);
    if (sweep_cmd->parsed()) return mcs::cli::cmd_sweep(config, out, std::cerr);
    const int code = mcs::cli::cmd_gradcheck(config, out, std::cout);
    return code;
  } catch (const mcs::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return mcs::cli::kExitConfig;
  } catch (const mcs::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return mcs::cli::kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return mcs::cli::kExitFailure;
  }
}
