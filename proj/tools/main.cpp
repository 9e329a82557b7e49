#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "radialnet/errors.hpp"
#include "radialnet/version.hpp"
#include "sweep.hpp"

using namespace radialnet::cli;

namespace {

struct KeyFlags {
  std::string config_path;
  std::vector<std::string> sets;
  std::map<std::string, std::string> flags;

  void attach(CLI::App* app, const std::vector<std::pair<std::string, std::string>>& keys) {
    app->add_option("-c,--config", config_path, "flat key = value config file");
    app->add_option("--set", sets, "key=value override (repeatable)");
    for (const auto& [key, help] : keys) app->add_option("--" + key, flags[key], help);
  }

  JobConfig resolve(CLI::App* app) const {
    JobConfig cfg = config_path.empty() ? JobConfig{} : JobConfig::load(config_path);
    for (const auto& [key, value] : flags)
      if (app->count("--" + key) > 0) cfg.set(key, value);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + s + "'");
      cfg.set(s.substr(0, eq), s.substr(eq + 1));
    }
    return cfg;
  }
};

const std::vector<std::pair<std::string, std::string>> kBuildKeys = {
    {"target", "fd | monomial:k | profile:<name> | fourier"},
    {"d", "input dimension"},
    {"epsilon", "target sup error"},
    {"activation", "exp | relu"},
    {"mode", "tuned | theoretical"},
    {"seed", "64-bit seed (RADIALNET_SEED overrides)"},
    {"samples", "verification samples"},
    {"restarts", "pattern-search restarts"},
    {"width_budget", "largest width to build"},
    {"width", "fixed width (fd, fourier)"},
    {"profile", "profile for the fourier target"},
    {"degree_override", "even polynomial degree"},
    {"out", "output stem"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radialnet: depth-2 networks for radial functions on the unit ball"};
  app.set_version_flag("--version", std::string(radialnet::kVersion));
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 ok, 2 usage error, 3 verification failure, 4 width overflow.\n"
      "Profiles: abs_half linear square cosine zero const:<c> expr:<expression in z>.");

  auto* fd = app.add_subcommand("fd", "tabulate both series of F_d as CSV (z,series,closed,diff)");
  int fd_d = 0;
  std::string fd_grid, fd_out;
  double fd_tol = 1e-16;
  fd->add_option("--d", fd_d, "dimension")->required();
  fd->add_option("--grid", fd_grid, "a:b:n or z0,z1,...")->required();
  fd->add_option("--tol", fd_tol, "series truncation tolerance");
  fd->add_option("--out", fd_out, "CSV path (default stdout)");

  auto* build = app.add_subcommand("build", "build a network; writes <out>.network/.report/.plan.json");
  KeyFlags build_keys;
  build_keys.attach(build, kBuildKeys);

  auto* verify = app.add_subcommand("verify", "re-verify a saved network; exit 0 iff sup <= epsilon");
  KeyFlags verify_keys;
  verify_keys.attach(verify, {{"network", "network JSON path"},
                              {"target", "target spec (default: recorded one)"},
                              {"d", "dimension check"},
                              {"epsilon", "threshold (default: recorded one)"},
                              {"samples", "verification samples"},
                              {"restarts", "pattern-search restarts"},
                              {"seed", "verification seed (default: recorded one)"},
                              {"out", "report path"}});

  auto* sweep = app.add_subcommand("sweep", "Cartesian sweep over target/d/epsilon/width lists to CSV");
  KeyFlags sweep_keys;
  auto sweep_list = kBuildKeys;
  sweep_list.push_back({"threads", "worker threads"});
  sweep_list.push_back({"ledger", "completed-cell ledger path"});
  sweep_list.push_back({"stop_after", "stop after this many new cells"});
  sweep_keys.attach(sweep, sweep_list);

  auto* coeffs = app.add_subcommand("coeffs", "monomial plan (d, k, epsilon) or even polynomial (profile, epsilon)");
  KeyFlags coeff_keys;
  coeff_keys.attach(coeffs, {{"d", "dimension"},
                             {"k", "monomial degree |x|^{2k}"},
                             {"epsilon", "accuracy"},
                             {"solver", "explicit | elimination"},
                             {"profile", "even polynomial of this profile instead"},
                             {"degree", "even polynomial degree override"},
                             {"out", "JSON path (default stdout)"}});

  auto* fourier = app.add_subcommand("fourier", "Fourier-feature ReLU network for d in {1,3}");
  KeyFlags fourier_keys;
  fourier_keys.attach(fourier, {{"profile", "radial profile (default linear)"},
                                {"d", "1 or 3"},
                                {"epsilon", "target sup error"},
                                {"width", "fixed number of ridge features"},
                                {"seed", "64-bit seed"},
                                {"samples", "verification samples"},
                                {"restarts", "pattern-search restarts"},
                                {"out", "output stem"}});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*fd) return cmd_fd(fd_d, fd_grid, fd_tol, fd_out, std::cout);
    if (*build) return cmd_build(build_keys.resolve(build), std::cout);
    if (*verify) return cmd_verify(verify_keys.resolve(verify), std::cout);
    if (*sweep) return cmd_sweep(sweep_keys.resolve(sweep), std::cout);
    if (*coeffs) return cmd_coeffs(coeff_keys.resolve(coeffs), std::cout);
    if (*fourier) return cmd_fourier(fourier_keys.resolve(fourier), std::cout);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
