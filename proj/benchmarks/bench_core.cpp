#include <benchmark/benchmark.h>

#include "mcs/dynamics.hpp"
#include "mcs/follower.hpp"
#include "mcs/leader.hpp"
#include "mcs/rl/mlp.hpp"
#include "mcs/rng.hpp"

namespace {

using namespace mcs;

Scenario experiment_scenario(std::size_t n) {
  RngStream rng(1);
  std::vector<MuProfile> mus;
  while (mus.size() < n) {
    const double c = rng.uniform(0.0, 1.0);
    const double d = rng.uniform(0.0, 1.0);
    if (d > c) mus.emplace_back(20.0, d, c, DemandDistribution::uniform(0.0, 25.0));
  }
  return Scenario(50.0, std::move(mus), 1);
}

void BM_BestResponseUniform(benchmark::State& state) {
  const MuProfile mu(20.0, 1.0, 0.0, DemandDistribution::uniform(0.0, 25.0));
  double p = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response(mu, p));
    p = p < 0.99 ? p + 1e-3 : 0.3;
  }
}
BENCHMARK(BM_BestResponseUniform);

void BM_BestResponseTruncatedExponential(benchmark::State& state) {
  const MuProfile mu(20.0, 1.0, 0.1, DemandDistribution::truncated_exponential(0.0, 25.0, 0.1));
  double p = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response(mu, p));
    p = p < 0.99 ? p + 1e-3 : 0.3;
  }
}
BENCHMARK(BM_BestResponseTruncatedExponential);

void BM_SolveEquilibrium(benchmark::State& state) {
  const Scenario s = experiment_scenario(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_se(s));
}
BENCHMARK(BM_SolveEquilibrium)->Arg(1)->Arg(5)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_MlpForwardBackward(benchmark::State& state) {
  RngStream rng(2);
  const rl::Mlp net = rl::Mlp::random({10, 64, 64, 5}, rl::OutputActivation::ScaledSigmoid, 1.0, rng);
  Eigen::VectorXd x = Eigen::VectorXd::Random(10);
  Eigen::VectorXd u = Eigen::VectorXd::Ones(5);
  rl::MlpGradients g = net.zero_gradients();
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.forward(x));
    net.accumulate_backward(x, u, g);
  }
}
BENCHMARK(BM_MlpForwardBackward);

void BM_EnvStep(benchmark::State& state) {
  const Scenario s = experiment_scenario(5);
  const EnvConfig env;
  RngStream rng(3);
  GameState st = env_reset(s, env, rng);
  for (auto _ : state) {
    Transition t = env_step(s, env, st, random_policy(s.size(), env, rng));
    st = std::move(t.next_state);
  }
}
BENCHMARK(BM_EnvStep);

}  // namespace

BENCHMARK_MAIN();
