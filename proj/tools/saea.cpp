// Command line front end: run and trace experiments, print theory tables.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "saea/error.hpp"
#include "saea/harness/config.hpp"
#include "saea/harness/experiment.hpp"
#include "saea/harness/io.hpp"
#include "saea/theory.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

using namespace saea;
using namespace saea::harness;

int print_theory(std::size_t n, std::size_t lambda, std::size_t mu, double A, double b, double p_inc,
                 double delta, double epsilon, std::size_t jmax) {
  const auto check = validate_params(n, lambda, mu, A, b, p_inc, delta, epsilon, n);
  for (const auto& v : check.violations) std::cerr << "warning: " << v << '\n';
  const double alpha0 = static_cast<double>(lambda) / static_cast<double>(mu);
  const auto params = TheoryParams::derive(n, alpha0, A, b, p_inc, delta, epsilon, n);
  if (jmax >= n) jmax = n - 1;
  std::cout << "j,eta,theta1,theta2,depth\n";
  for (std::size_t j = 0; j <= jmax; ++j) {
    std::cout << j << ',' << format_double(params.eta(j)) << ',' << format_double(params.theta1(j))
              << ',' << format_double(params.theta2(j)) << ',' << params.depth(j) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-adaptive (mu,lambda) EA experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "results";
  std::string format = "csv";
  unsigned workers = 1;

  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "YAML config")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 1024u));

  auto* trace = app.add_subcommand("trace", "Run a traced experiment");
  trace->add_option("config", config_path, "YAML config")->required();
  trace->add_option("--out", out_dir, "Output directory");
  trace->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  trace->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 1024u));

  auto* check = app.add_subcommand("validate", "Check a config without running it");
  check->add_option("config", config_path, "YAML config")->required();

  std::size_t n = 500, lambda = 50, mu = 3, jmax = 20;
  double A = 1.5, b = 0.7, p_inc = 0.25, delta = 0.05, epsilon = 0.0;
  auto* theory = app.add_subcommand("theory", "Print eta, theta1, theta2 and depth per level");
  theory->add_option("--n", n, "Problem size")->check(CLI::PositiveNumber);
  theory->add_option("--lambda", lambda, "Offspring population size")->check(CLI::PositiveNumber);
  theory->add_option("--mu", mu, "Parent population size")->check(CLI::PositiveNumber);
  theory->add_option("--A", A, "Rate increase factor");
  theory->add_option("--b", b, "Rate decrease factor");
  theory->add_option("--pinc", p_inc, "Probability of increasing the rate");
  theory->add_option("--delta", delta, "Slack parameter");
  theory->add_option("--epsilon", epsilon, "Lower rate bound (default 1/(2n))");
  theory->add_option("--jmax", jmax, "Largest level to print");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*theory) return print_theory(n, lambda, mu, A, b, p_inc, delta, epsilon, jmax);
    const auto config = load_config(config_path);
    if (*check) {
      validate(config);
      std::cout << "ok\n";
      return 0;
    }
    const auto fmt = parse_output_format(format);
    if (*run && !config.trace) {
      write_experiment(out_dir, run_experiment(config, workers), fmt);
    } else {
      write_trace(out_dir, run_trace_experiment(config, workers), fmt);
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
