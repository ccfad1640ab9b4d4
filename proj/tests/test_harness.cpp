#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "saea/error.hpp"
#include "saea/harness/config.hpp"
#include "saea/harness/experiment.hpp"
#include "saea/harness/expr.hpp"
#include "saea/harness/io.hpp"
#include "saea/harness/stats.hpp"
#include "saea/theory.hpp"

using namespace saea;
using namespace saea::harness;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("saea_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

RunRow row(std::uint64_t evals, bool success = true, std::uint64_t budget = 1000) {
  RunRow r{"one_plus_one", "leadingones_k", 50, 10, 0, {}};
  r.record.evaluations = evals;
  r.record.success = success;
  r.record.budget = budget;
  return r;
}

const char* kSmallConfig = R"(
function: leadingones_k
n: 50
k: [10]
trials: 2
budget: 1e6
base_seed: 3
algorithms:
  one_plus_one: {}
)";

}  // namespace

TEST_CASE("lower quantile convention") {
  const std::vector<int> one{3};
  CHECK(lower_quantile<int>(one, 50) == 3);
  CHECK(lower_quantile<int>(one, 25) == 3);
  CHECK(lower_quantile<int>(one, 75) == 3);
  const std::vector<int> four{1, 2, 3, 4};
  CHECK(lower_quantile<int>(four, 50) == 2);
  CHECK(lower_quantile<int>(four, 25) == 1);
  CHECK(lower_quantile<int>(four, 75) == 3);
  CHECK(lower_quantile<int>(four, 100) == 4);
  CHECK(lower_quantile<int>(four, 0) == 1);
  std::vector<int> hundred(100);
  std::iota(hundred.begin(), hundred.end(), 1);
  CHECK(lower_quantile<int>(hundred, 50) == 50);
  CHECK(lower_quantile<int>(hundred, 25) == 25);
  CHECK(lower_quantile<int>(hundred, 75) == 75);
  CHECK(lower_quantile<int>(hundred, 95) == 95);
  const std::vector<int> none;
  CHECK_THROWS_AS(lower_quantile<int>(none, 50), UsageError);
  CHECK_THROWS_AS(lower_quantile<int>(four, 101), UsageError);
}

TEST_CASE("summaries count censored runs at their budget") {
  std::vector<RunRow> rows{row(40), row(10), row(0, false, 1000), row(20)};
  const auto s = summarize(rows, Normalization::KSquared);
  CHECK(s.trials == 4);
  CHECK(s.success_count == 3);
  CHECK(s.median == 20);
  CHECK(s.q1 == 10);
  CHECK(s.q3 == 40);
  CHECK(s.p95 == 1000);
  CHECK(s.normalized_median == doctest::Approx(0.2));
  CHECK(s.q1 <= s.median);
  CHECK(s.median <= s.q3);

  const std::vector<RunRow> empty;
  CHECK_THROWS_AS(summarize(empty, Normalization::None), UsageError);
  rows.push_back(row(5));
  rows.back().k = 11;
  CHECK_THROWS_AS(summarize(rows, Normalization::None), UsageError);
}

TEST_CASE("normalization") {
  CHECK(normalize(1e6, FunctionKind::LeadingOnesK, 2000, 1000, Normalization::KSquared) == 1.0);
  CHECK(normalize(1234.5, FunctionKind::OneMaxK, 10, 3, Normalization::None) == 1234.5);
  CHECK(normalize(std::exp(1.0), FunctionKind::OneMaxK, 10, std::exp(1.0), Normalization::KLogK) ==
        doctest::Approx(1.0));
  CHECK(normalize(5000, FunctionKind::SubStringK, 100, 50, Normalization::NK) == 1.0);
  CHECK_THROWS_AS(normalize(1, FunctionKind::OneMaxK, 10, 3, Normalization::KSquared), ConfigError);
  CHECK_THROWS_AS(normalize(1, FunctionKind::LeadingOnesK, 10, 3, Normalization::KLogK), ConfigError);
  CHECK_THROWS_AS(normalize(1, FunctionKind::OneMaxK, 10, 1, Normalization::KLogK), ConfigError);
  CHECK(parse_normalization("k_log_k") == Normalization::KLogK);
  CHECK_THROWS_AS(parse_normalization("k2"), ConfigError);
}

TEST_CASE("parameter expressions") {
  const Variables v{{"n", 500.0}, {"lambda", 99.0}};
  CHECK(evaluate_expression("16*ln(n)", v) == doctest::Approx(16 * std::log(500.0)));
  CHECK(evaluate_expression("lambda/8", v) == doctest::Approx(12.375));
  CHECK(evaluate_expression("2^3^2", v) == 512.0);
  CHECK(evaluate_expression("-(1+2)*3", v) == -9.0);
  CHECK(evaluate_expression("sqrt_n", v) == doctest::Approx(std::sqrt(500.0)));
  CHECK(evaluate_expression("1e9", v) == 1e9);
  CHECK(evaluate_expression("log2(8) + exp(0)", v) == 4.0);
  CHECK_THROWS_AS(evaluate_expression("m + 1", v), ConfigError);
  CHECK_THROWS_AS(evaluate_expression("(1 + 2", v), ConfigError);
  CHECK_THROWS_AS(evaluate_expression("", v), ConfigError);
  CHECK_THROWS_AS(evaluate_expression("foo(2)", v), ConfigError);
}

TEST_CASE("config parsing and round trip") {
  const auto cfg = parse_config(R"(
function: onemax_k
n: 200
k: {from: 10, to: 200, count: 4, spacing: linear}
trials: 5
budget: 1e7
base_seed: 9
normalization: k_log_k
trace: false
overlay: none
algorithms:
  sa_mu_lambda: {lambda: 8*ln(n), mu: lambda/15, A: 1.5}
  one_plus_one_alpha: {success: strict}
)");
  CHECK(cfg.function == FunctionKind::OneMaxK);
  CHECK(cfg.n == 200);
  REQUIRE(cfg.k_grid.has_value());
  CHECK(cfg.k_grid->spacing == Spacing::Linear);
  CHECK(cfg.budget == 10'000'000);
  CHECK(cfg.algorithms.size() == 2);
  CHECK(parse_config(to_yaml(cfg)) == cfg);

  const auto small = parse_config(kSmallConfig);
  CHECK(parse_config(to_yaml(small)) == small);
  CHECK(small.k == std::vector<std::string>{"10"});

  CHECK_THROWS_AS(parse_config("function: leadingones_k\nn: 10\ncolour: red\nalgorithms: {one_plus_one: {}}"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("function: leadingones\nn: 10\nalgorithms: {one_plus_one: {lambda: 3}}"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("function: nope\nn: 10\nalgorithms: {one_plus_one: {}}"), ConfigError);
  CHECK_THROWS_AS(parse_config("function: onemax\nn: 10\nalgorithms: {ga: {}}"), ConfigError);
  CHECK_THROWS_AS(parse_config("function: onemax\nn: 10"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2"), ConfigError);
}

TEST_CASE("k resolution") {
  auto cfg = parse_config(kSmallConfig);
  cfg.n = 2000;
  cfg.k = {};
  cfg.k_grid = KGrid{"100", "n", 6, Spacing::Geometric};
  const auto ks = resolve_k(cfg);
  REQUIRE(ks.size() == 6);
  CHECK(ks.front() == 100);
  CHECK(ks.back() == 2000);
  CHECK(ks[1] == std::lround(100 * std::pow(20.0, 0.2)));

  cfg.k_grid.reset();
  cfg.k = {"sqrt_n", "n/2", "sqrt_n"};
  CHECK(resolve_k(cfg) == std::vector<std::size_t>{45, 1000});

  cfg.function = FunctionKind::LeadingOnes;
  CHECK(resolve_k(cfg) == std::vector<std::size_t>{2000});

  cfg.function = FunctionKind::JumpK;
  cfg.k = {"n"};
  CHECK_THROWS_AS(resolve_k(cfg), ConfigError);
  cfg.function = FunctionKind::LeadingOnesK;
  cfg.k = {};
  CHECK_THROWS_AS(resolve_k(cfg), ConfigError);
}

TEST_CASE("algorithm defaults and rounding") {
  const auto sa = resolve_algorithm({AlgorithmKind::SelfAdaptive, {}}, 500, 50);
  CHECK(sa.lambda == 99);
  CHECK(sa.mu == 12);
  CHECK(sa.sa.A == doctest::Approx(1.2));
  CHECK(sa.sa.b == doctest::Approx(0.7));
  CHECK(sa.sa.p_inc == doctest::Approx(0.25));
  CHECK(sa.sa.epsilon == doctest::Approx(0.001));
  CHECK(sa.reproductive_rate() == doctest::Approx(8.25));

  const auto first =
      resolve_algorithm({AlgorithmKind::SelfAdaptive, {{"lambda", "8*ln(n)"}, {"mu", "lambda/15"}}}, 500, 500);
  CHECK(first.lambda == 50);
  CHECK(first.mu == 3);

  const auto st = resolve_algorithm({AlgorithmKind::MuLambdaStatic, {}}, 500, 50);
  CHECK(st.lambda == 99);
  CHECK(st.mu == 12);
  CHECK(st.rate == doctest::Approx(2.0 / 2500));

  CHECK(resolve_algorithm({AlgorithmKind::OnePlusOne, {}}, 500, 50).rate == doctest::Approx(0.002));
  const auto al = resolve_algorithm({AlgorithmKind::OnePlusOneAlpha, {}}, 500, 50);
  CHECK(al.alpha.b == doctest::Approx(0.85));
  CHECK(al.alpha.success == SuccessRule::NotWorse);
  CHECK(resolve_algorithm({AlgorithmKind::OnePlusOneAlpha, {{"success", "strict"}}}, 500, 50).alpha.success ==
        SuccessRule::Strict);

  CHECK_THROWS_AS(resolve_algorithm({AlgorithmKind::SelfAdaptive, {{"mu", "0.4"}}}, 500, 50), ConfigError);
  CHECK_THROWS_AS(resolve_algorithm({AlgorithmKind::SelfAdaptive, {{"mu", "lambda+1"}}}, 500, 50), ConfigError);
  CHECK_THROWS_AS(resolve_algorithm({AlgorithmKind::SelfAdaptive, {{"A", "0.9"}}}, 500, 50), ConfigError);
  CHECK_THROWS_AS(resolve_algorithm({AlgorithmKind::OnePlusOne, {{"rate", "0.7"}}}, 500, 50), ConfigError);
}

TEST_CASE("run seeds depend only on the run's own coordinates") {
  const auto a = run_seed(1, "leadingones_k", "sa_mu_lambda", 500, 50, 0);
  CHECK(a == run_seed(1, "leadingones_k", "sa_mu_lambda", 500, 50, 0));
  CHECK(a != run_seed(1, "leadingones_k", "sa_mu_lambda", 500, 50, 1));
  CHECK(a != run_seed(1, "leadingones_k", "one_plus_one", 500, 50, 0));
  CHECK(a != run_seed(2, "leadingones_k", "sa_mu_lambda", 500, 50, 0));

  auto cfg = parse_config(kSmallConfig);
  const auto alone = run_experiment(cfg);
  cfg.algorithms.push_back({AlgorithmKind::SelfAdaptive, {{"lambda", "10"}, {"mu", "2"}}});
  const auto together = run_experiment(cfg);
  for (const auto& r : together.runs) {
    if (r.algorithm != "one_plus_one") continue;
    CHECK(r.record.evaluations == alone.runs[r.trial].record.evaluations);
    CHECK(r.record.seed == alone.runs[r.trial].record.seed);
  }
}

TEST_CASE("counting contract") {
  const auto result = run_experiment(parse_config(kSmallConfig));
  CHECK(result.runs.size() == 2);
  CHECK(result.summaries.size() == 1);
  for (const auto& r : result.runs) CHECK(r.record.success);

  auto mixed = parse_config(R"(
function: leadingones_k
n: 500
k: [50, 100, 250, 500]
trials: 30
budget: 2000
algorithms:
  sa_mu_lambda: {}
  one_plus_one: {}
  one_plus_one_alpha: {}
  mu_lambda_static: {}
)");
  const auto big = run_experiment(mixed, 2);
  CHECK(big.runs.size() == 480);
  CHECK(big.summaries.size() == 16);
  for (std::size_t i = 1; i < big.runs.size(); ++i) {
    const auto& a = big.runs[i - 1];
    const auto& b = big.runs[i];
    REQUIRE(std::tie(a.function, a.algorithm, a.n, a.k, a.trial) <
            std::tie(b.function, b.algorithm, b.n, b.k, b.trial));
  }
}

TEST_CASE("outputs are byte-identical across reruns and worker counts") {
  auto cfg = parse_config(R"(
function: substring_k
n: 60
k: [5, 20]
trials: 6
budget: 200000
base_seed: 17
normalization: k_squared
algorithms:
  sa_mu_lambda: {lambda: 20, mu: 3}
  one_plus_one: {}
)");
  const auto d1 = scratch("w1"), d4 = scratch("w4"), again = scratch("again");
  write_experiment(d1, run_experiment(cfg, 1), OutputFormat::Csv);
  write_experiment(d4, run_experiment(cfg, 4), OutputFormat::Csv);
  write_experiment(again, run_experiment(cfg, 1), OutputFormat::Csv);
  for (const char* f : {"runs.csv", "summary.csv"}) {
    CHECK(slurp(d1 / f) == slurp(d4 / f));
    CHECK(slurp(d1 / f) == slurp(again / f));
  }
  const auto runs = slurp(d1 / "runs.csv");
  CHECK(runs.rfind("algorithm,function,n,k,trial,seed,evaluations,success,budget\n", 0) == 0);
  CHECK(slurp(d1 / "summary.csv")
            .rfind("algorithm,function,n,k,trials,success_count,median,q1,q3,p95,normalized_median\n", 0) == 0);
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d4);
  std::filesystem::remove_all(again);
}

TEST_CASE("trace experiments") {
  auto cfg = parse_config(R"(
function: leadingones
n: 100
trials: 3
budget: 20
trace: true
algorithms:
  sa_mu_lambda: {lambda: 20, mu: 2, A: 1.5}
)");
  // A budget of one generation gives one trace row per trial.
  auto tr = run_trace_experiment(cfg);
  CHECK(tr.trace.size() == 3);
  CHECK(tr.runs.runs.size() == 3);
  for (const auto& s : tr.summary) {
    REQUIRE(s.overlay_rate.has_value());
    CHECK(*s.overlay_rate == doctest::Approx(error_threshold(static_cast<double>(s.fitness), 10.0)));
    CHECK(s.median_rate == doctest::Approx(0.01));
  }

  cfg.budget = 100000;
  tr = run_trace_experiment(cfg, 2);
  for (std::size_t i = 1; i < tr.summary.size(); ++i) CHECK(tr.summary[i - 1].fitness < tr.summary[i].fitness);
  for (const auto& s : tr.summary) CHECK(s.median_rate <= s.p95_rate);
  for (std::size_t i = 1; i < tr.trace.size(); ++i) {
    const auto& a = tr.trace[i - 1];
    const auto& b = tr.trace[i];
    REQUIRE((a.trial < b.trial || (a.trial == b.trial && a.record.generation + 1 == b.record.generation)));
  }

  auto jump = parse_config(R"(
function: jump_k
n: 100
k: 3
trials: 2
budget: 2000
algorithms:
  sa_mu_lambda: {lambda: 8*ln(n), mu: lambda/15, A: 1.5}
)");
  for (const auto& s : run_trace_experiment(jump).summary) CHECK(*s.overlay_rate == doctest::Approx(0.03));
  jump.overlay = "none";
  for (const auto& s : run_trace_experiment(jump).summary) CHECK_FALSE(s.overlay_rate.has_value());
  jump.overlay = "2/n";
  for (const auto& s : run_trace_experiment(jump).summary) CHECK(*s.overlay_rate == doctest::Approx(0.02));

  auto bad = jump;
  bad.algorithms = {{AlgorithmKind::OnePlusOne, {}}};
  CHECK_THROWS_AS(run_trace_experiment(bad), ConfigError);
  bad = jump;
  bad.k = {"2", "3"};
  CHECK_THROWS_AS(run_trace_experiment(bad), ConfigError);
}

TEST_CASE("trace and json writers") {
  auto cfg = parse_config(R"(
function: onemax
n: 30
trials: 2
budget: 100000
algorithms:
  one_plus_one_alpha: {}
)");
  const auto tr = run_trace_experiment(cfg);
  const auto csv = scratch("trace_csv"), js = scratch("trace_json");
  write_trace(csv, tr, OutputFormat::Csv);
  write_trace(js, tr, OutputFormat::Json);
  CHECK(slurp(csv / "trace.csv").rfind("trial,generation,best_fitness,best_rate\n", 0) == 0);
  CHECK(slurp(csv / "trace_summary.csv").rfind("fitness,median_rate,p95_rate,overlay_rate\n", 0) == 0);
  CHECK(std::filesystem::exists(csv / "runs.csv"));

  const auto runs = nlohmann::json::parse(slurp(js / "runs.json"));
  REQUIRE(runs.size() == 2);
  CHECK(runs[0]["algorithm"] == "one_plus_one_alpha");
  CHECK(runs[0]["success"] == true);
  const auto trace = nlohmann::json::parse(slurp(js / "trace.json"));
  CHECK(trace.size() == tr.trace.size());
  const auto summary = nlohmann::json::parse(slurp(js / "trace_summary.json"));
  CHECK(summary[0]["overlay_rate"] == doctest::Approx(1.0 / 30));
  std::filesystem::remove_all(csv);
  std::filesystem::remove_all(js);

  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_double(1e-5) == "1e-05");
  CHECK(parse_output_format("json") == OutputFormat::Json);
  CHECK_THROWS_AS(parse_output_format("xml"), ConfigError);
}
