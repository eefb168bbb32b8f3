// Runs acceptance criteria 1-10 (or the ids given as arguments) and prints
// one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mcs/cli/commands.hpp"
#include "mcs/cli/config.hpp"
#include "mcs/cli/experiments.hpp"
#include "mcs/cli/gradcheck.hpp"
#include "mcs/cli/scenario_gen.hpp"
#include "mcs/dynamics.hpp"
#include "mcs/follower.hpp"
#include "mcs/leader.hpp"
#include "mcs/rl/trainer.hpp"
#include "test_support.hpp"

namespace {

using namespace mcs;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c, d);
  return buf;
}

// 1. Closed-form best response against a 10^4-point brute force.
Outcome follower_oracle() {
  const auto t0 = Clock::now();
  RngStream rng(101);
  double worst_steps = 0.0;
  double worst_gap = -1e300;
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const MuProfile mu = testing::random_mu(rng);
    for (int k = 0; k < 20; ++k) {
      const double p = rng.uniform(0.0, 1.2 * mu.delta());
      const double x = best_response(mu, p).x_star;
      const testing::GridMax grid = testing::follower_grid_argmax(mu, p);
      const double u = mu_payoff(mu, x, p);
      const double steps = std::abs(x - grid.arg) / grid.step;
      const double gap = (grid.value - u) / (1.0 + std::abs(u));
      worst_steps = std::max(worst_steps, steps);
      worst_gap = std::max(worst_gap, gap);
      ok = ok && steps <= 2.0 + 1e-9 && gap <= 1e-6;
    }
  }
  const double t = seconds_since(t0);
  return {ok && t <= 30.0,
          fmt("2000 cases, max |x - grid| = %.3g grid steps, max relative payoff gap %.3g, %.2f s", worst_steps,
              worst_gap, t)};
}

// 2. First-order condition at interior best responses.
Outcome foc_residual_check() {
  RngStream rng(102);
  double worst = 0.0;
  int interior = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const MuProfile mu = testing::random_mu(rng);
    const double p = rng.uniform(0.0, 1.2 * mu.delta());
    const BestResponse r = best_response(mu, p);
    if (r.region != ResponseRegion::Interior) continue;
    ++interior;
    worst = std::max(worst, std::abs(foc_residual(mu, r.x_star, p)));
  }
  return {interior > 100 && worst <= 1e-9, fmt("%.0f interior responses, max |residual| = %.3g", interior, worst)};
}

// 3. Single-MU leader problem against a price grid with step 1e-4.
Outcome leader_oracle() {
  const auto t0 = Clock::now();
  const Scenario s(50.0, {testing::reference_mu()}, 1);
  const EquilibriumResult r = compute_se(s);
  const testing::GridMax grid = testing::leader_grid_argmax(s, price_threshold(s.mu(0)), s.mu(0).delta(), 1e-4);
  const double dp = std::abs(r.p_star[0] - grid.arg);
  const double du = std::abs(r.sp_payoff - grid.value);
  const double t = seconds_since(t0);
  return {r.converged && dp <= 1e-3 && du <= 1e-4 && t <= 5.0,
          fmt("p* = %.9f (grid %.4f), payoff %.9f (grid %.9f)", r.p_star[0], grid.arg, r.sp_payoff, grid.value) +
              fmt(", %.2f s", t)};
}

struct Solved {
  Scenario scenario;
  EquilibriumResult result;
};

std::vector<Solved> solved_scenarios() {
  std::vector<Solved> out;
  RngStream rng(104);
  for (int i = 0; i < 50; ++i) {
    Scenario s = testing::experiment_scenario(rng, 5, 50.0, static_cast<std::uint64_t>(i));
    EquilibriumResult r = compute_se(s);
    out.push_back({std::move(s), std::move(r)});
  }
  return out;
}

// 4. Five starts agree on 50 random scenarios.
Outcome uniqueness(const std::vector<Solved>& solved) {
  double worst = 0.0;
  bool converged = true;
  for (const Solved& s : solved) {
    worst = std::max(worst, s.result.multistart_spread);
    converged = converged && s.result.converged;
  }
  return {converged && worst <= 1e-5,
          fmt("50 scenarios, max 5-start spread %.3g, all converged: ", worst) + (converged ? "yes" : "no")};
}

// 5. p*_n <= g'(b) / (1 + x*_n) at every solved equilibrium.
Outcome price_bound(const std::vector<Solved>& solved) {
  double worst = -1e300;
  std::size_t checked = 0;
  std::vector<Solved> all = solved;
  all.push_back({Scenario(50.0, {testing::reference_mu()}, 1), {}});
  all.back().result = compute_se(all.back().scenario);
  all.push_back({cli::generate_scenario(cli::GenerationSpec{}, 1), {}});
  all.back().result = compute_se(all.back().scenario);
  for (const Solved& s : all) {
    const double b = aggregate_b(s.result.x_star);
    for (std::size_t n = 0; n < s.scenario.size(); ++n) {
      const double bound = s.scenario.lambda() / (b * (1.0 + s.result.x_star[n]));
      worst = std::max(worst, s.result.p_star[n] - bound);
      ++checked;
    }
  }
  return {worst <= 1e-8, fmt("%.0f prices, max (p* - bound) = %.3g", static_cast<double>(checked), worst)};
}

// 6. v^T H v < 0 and the analytic Hessian diagonal against second differences.
Outcome concavity() {
  RngStream rng(106);
  double max_quad = -1e300;
  double worst_diag = 0.0;
  for (int point = 0; point < 100; ++point) {
    const Scenario s = testing::experiment_scenario(rng, 5, rng.uniform(5.0, 100.0), 0, 0.01);
    const PriceProfile p = testing::interior_price(s, rng, 1e-3);
    const Eigen::MatrixXd h = sp_payoff_hessian(s, p);
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd v(5);
      for (Eigen::Index i = 0; i < 5; ++i) v[i] = rng.normal();
      v.normalize();
      max_quad = std::max(max_quad, v.dot(h * v));
    }
    for (std::size_t n = 0; n < s.size(); ++n) {
      const double step = std::min(1e-5, 0.5 * testing::face_distance(s, p, n));
      const double fd = testing::second_difference(
          [&](double v) {
            PriceProfile q = p;
            q[n] = v;
            return induced_sp_payoff(s, q);
          },
          p[n], step);
      const auto i = static_cast<Eigen::Index>(n);
      worst_diag = std::max(worst_diag, testing::rel_err(h(i, i), fd, 1e-3));
    }
  }
  return {max_quad < 0.0 && worst_diag <= 1e-3,
          fmt("1000 directions, max v'Hv = %.3g; max diagonal relative error %.3g", max_quad, worst_diag)};
}

// 7. Every analytic derivative against central differences.
Outcome gradient_suite() {
  const std::vector<cli::CheckResult> results = cli::run_gradcheck(107, 10);
  bool ok = results.size() == cli::gradcheck_names().size();
  std::string detail;
  for (const cli::CheckResult& r : results) {
    ok = ok && r.passed;
    detail += (detail.empty() ? "" : "; ") + r.name + fmt(" %.2g/%.0e", r.max_rel_err, r.tolerance);
  }
  return {ok, detail};
}

// 8. Ceteris-paribus sweeps.
struct TrendTally {
  int series = 0;
  int violations = 0;
  double worst = 0.0;  // largest move against the claimed direction
  std::vector<std::string> offenders;

  // sign +1: non-decreasing claimed; -1: non-increasing.
  void check(const std::vector<double>& ys, int sign, double slack, const std::string& where) {
    ++series;
    bool bad = false;
    for (std::size_t i = 1; i < ys.size(); ++i) {
      const double against = -sign * (ys[i] - ys[i - 1]);
      worst = std::max(worst, against);
      bad = bad || against > slack;
    }
    if (!bad) return;
    ++violations;
    std::string values;
    for (double y : ys) values += fmt(" %.6g", y);
    offenders.push_back(where + ":" + values);
  }
};

std::vector<double> column(const cli::SweepResult& r, std::size_t mu, const std::function<double(const cli::SweepRow&)>& f) {
  std::vector<double> out;
  for (const cli::SweepRow& row : r.rows) {
    if (row.mu == mu) out.push_back(f(row));
  }
  return out;
}

Outcome comparative_statics() {
  const auto t0 = Clock::now();
  // Solver tolerance 1e-8 on prices; allocations move by at most dx/dp times that.
  constexpr double kPriceSlack = 1e-7;
  constexpr double kAllocSlack = 1e-5;
  constexpr double kPayoffSlack = 1e-7;
  std::vector<double> deltas;
  std::vector<double> costs;
  for (int i = 1; i <= 20; ++i) deltas.push_back(0.05 * i);
  for (int i = 0; i < 20; ++i) costs.push_back(0.05 * i);
  const std::vector<double> uppers{20.0, 25.0, 30.0};

  TrendTally x_delta;
  TrendTally p_cost;
  TrendTally p_upper;
  TrendTally x_upper;
  TrendTally u_upper;
  bool converged = true;
  const cli::PointSolver solve = cli::static_point_solver({});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scenario ds = cli::generate_scenario(cli::delta_trend_preset(), seed);
    const cli::SweepResult d = cli::run_sweep(ds, "delta", deltas, solve);
    const Scenario cs = cli::generate_scenario(cli::cost_trend_preset(), seed);
    const cli::SweepResult c = cli::run_sweep(cs, "cost", costs, solve);
    cli::GenerationSpec spec;
    spec.lambda = 30.0;
    const Scenario u_scenario = cli::generate_scenario(spec, seed);
    const cli::SweepResult u = cli::run_sweep(u_scenario, "demand_upper", uppers, solve);
    converged = converged && d.all_converged && c.all_converged && u.all_converged;
    const std::string tag = "scenario seed " + std::to_string(seed);
    for (std::size_t n = 0; n < 5; ++n) {
      const std::string where = tag + " MU " + std::to_string(n + 1);
      x_delta.check(column(d, n, [](const cli::SweepRow& r) { return r.x_star; }), -1, kAllocSlack, where);
      p_cost.check(column(c, n, [](const cli::SweepRow& r) { return r.p_star; }), +1, kPriceSlack, where);
      p_upper.check(column(u, n, [](const cli::SweepRow& r) { return r.p_star; }), +1, kPriceSlack, where);
      x_upper.check(column(u, n, [](const cli::SweepRow& r) { return r.x_star; }), -1, kAllocSlack,
                    where + fmt(" (delta %.4g, cost %.4g)", u_scenario.mu(n).delta(), u_scenario.mu(n).cost()));
      u_upper.check(column(u, n, [](const cli::SweepRow& r) { return r.sp_payoff; }), -1, kPayoffSlack, where);
    }
    std::vector<double> summary;
    for (const cli::SweepSummaryRow& row : u.summary) summary.push_back(row.sp_payoff);
    u_upper.check(summary, -1, kPayoffSlack, tag + " all MUs");
  }
  const double t = seconds_since(t0);
  const bool ok = converged && t <= 120.0 && x_delta.violations == 0 && p_cost.violations == 0 &&
                  p_upper.violations == 0 && x_upper.violations == 0 && u_upper.violations == 0;
  std::ostringstream detail;
  detail << "violating series: x*(delta) " << x_delta.violations << "/" << x_delta.series << ", p*(cost) "
         << p_cost.violations << "/" << p_cost.series << ", p*(upper) " << p_upper.violations << "/"
         << p_upper.series << ", x*(upper) " << x_upper.violations << "/" << x_upper.series << ", SP payoff(upper) "
         << u_upper.violations << "/" << u_upper.series << fmt("; %.1f s", t);
  for (const TrendTally* tally : {&x_delta, &p_cost, &p_upper, &x_upper, &u_upper}) {
    for (const std::string& o : tally->offenders) detail << "; against trend at " << o;
  }
  return {ok, detail.str()};
}

// 9. Training recovers most of the equilibrium payoff and beats both baselines.
Outcome drl_convergence() {
  const auto t0 = Clock::now();
  const Scenario s = cli::generate_scenario(cli::GenerationSpec{}, 1);
  const EquilibriumResult se = compute_se(s);
  const EnvConfig env;
  const cli::PolicyEvaluation greedy = cli::evaluate_constant(s, env, greedy_policy(s.size(), env));
  int passing = 0;
  std::string detail = fmt("SE %.4f, greedy %.4f", se.sp_payoff, greedy.sp_payoff);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    rl::TrainConfig train;
    train.seed = seed;
    const rl::TrainResult r = mcs::train(s, env, train);
    double tail = 0.0;
    for (std::size_t e = r.trace.size() - 50; e < r.trace.size(); ++e) tail += r.trace[e].mean_payoff / 50.0;
    const cli::PolicyEvaluation random = cli::evaluate_random(s, env, 100, seed);
    const bool ok = tail >= 0.9 * se.sp_payoff && tail > greedy.sp_payoff && tail > random.sp_payoff;
    passing += ok ? 1 : 0;
    detail += fmt("; seed %.0f tail %.4f (%.3f of SE, random %.4f)", static_cast<double>(seed), tail,
                  tail / se.sp_payoff, random.sp_payoff) +
              (ok ? "" : " miss");
  }
  const double t = seconds_since(t0);
  detail += fmt("; %.0f s", t);
  return {passing >= 2 && t <= 900.0, detail};
}

// 10. Reruns of every command give identical file hashes.
std::string hashes(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  return nlohmann::json::parse(in)["files"].dump();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "mcs_acceptance_determinism";
  fs::remove_all(root);
  nlohmann::json doc{{"seed", 3}, {"scenario", {{"lambda", 30}}},
                     {"sweep", {{"axis", "demand_upper"}, {"values", {20, 25, 30}}}},
                     {"train", {{"episodes", 30}}},
                     {"output", {{"svg", true}, {"steps_trace", true}}}};
  const cli::RunConfig config = cli::build_config(doc);
  std::ostringstream sink;
  const std::vector<std::pair<std::string, std::function<int(const cli::RunConfig&, const fs::path&, std::ostream&)>>>
      commands{{"static", cli::cmd_static}, {"train", cli::cmd_train}, {"sweep", cli::cmd_sweep},
               {"gradcheck", cli::cmd_gradcheck}};
  bool ok = true;
  std::size_t files = 0;
  for (const auto& [name, cmd] : commands) {
    const fs::path a = root / (name + "_a");
    const fs::path b = root / (name + "_b");
    const int ca = cmd(config, a, sink);
    const int cb = cmd(config, b, sink);
    const std::string ha = hashes(a);
    ok = ok && ca == 0 && cb == 0 && ha == hashes(b);
    files += nlohmann::json::parse(ha).size();
  }
  fs::remove_all(root);
  return {ok, fmt("static, train, sweep, gradcheck rerun twice; %.0f files with identical SHA-256", static_cast<double>(files))};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Solved> solved;
  auto shared = [&]() -> const std::vector<Solved>& {
    if (solved.empty()) solved = solved_scenarios();
    return solved;
  };
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"follower oracle equivalence", follower_oracle},
      {"FOC residual", foc_residual_check},
      {"single-MU leader oracle", leader_oracle},
      {"multistart uniqueness", [&] { return uniqueness(shared()); }},
      {"price bound at equilibrium", [&] { return price_bound(shared()); }},
      {"concavity certificate", concavity},
      {"gradient suite", gradient_suite},
      {"comparative statics", comparative_statics},
      {"DRL convergence", drl_convergence},
      {"determinism", determinism},
  };

  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) ids.push_back(i);
  }

  int failures = 0;
  for (int id : ids) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 100;
    }
    const auto& [title, run] = criteria[static_cast<std::size_t>(id - 1)];
    const Outcome o = run();
    std::printf("criterion %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures;
}
