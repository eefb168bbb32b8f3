#include "mcs/cli/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mcs/errors.hpp"
#include "mcs/follower.hpp"
#include "mcs/leader.hpp"
#include "mcs/rl/buffer.hpp"
#include "mcs/rl/mlp.hpp"
#include "mcs/rl/policy.hpp"
#include "mcs/rl/ppo.hpp"
#include "mcs/rng.hpp"

namespace mcs::cli {

namespace {

constexpr std::uint64_t kGradcheckStreamBase = 40;

double rel_err(double a, double b, double floor) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

struct Tally {
  CheckResult result;
  double floor = 0.0;
  double corruption = 1.0;

  void compare(double analytic, double numeric) {
    result.max_rel_err = std::max(result.max_rel_err, rel_err(corruption * analytic, numeric, floor));
    ++result.comparisons;
  }
};

// Followers drawn as in the default experiment, with delta - cost >= 0.01 so
// every pricing box is wide enough for interior probes.
Scenario probe_scenario(RngStream& rng) {
  std::vector<MuProfile> mus;
  while (mus.size() < 5) {
    const double c = rng.uniform(0.0, 1.0);
    const double d = rng.uniform(0.0, 1.0);
    if (d > c + 0.01) mus.emplace_back(20.0, d, c, DemandDistribution::uniform(0.0, 25.0));
  }
  return Scenario(rng.uniform(5.0, 100.0), std::move(mus), 0);
}

PriceProfile interior_price(const PriceBox& box, RngStream& rng) {
  PriceProfile p;
  for (std::size_t n = 0; n < box.lower.size(); ++n) {
    const double m = std::min(1e-3, 0.25 * (box.upper[n] - box.lower[n]));
    p.p.push_back(rng.uniform(box.lower[n] + m, box.upper[n] - m));
  }
  return p;
}

double face_distance(const PriceBox& box, const PriceProfile& p, std::size_t n) {
  return std::min(p[n] - box.lower[n], box.upper[n] - p[n]);
}

void leader_gradient(Tally& t, RngStream& rng) {
  const Scenario s = probe_scenario(rng);
  const PriceBox box = price_box(s);
  const PriceProfile p = interior_price(box, rng);
  const std::vector<double> g = sp_payoff_gradient(s, p);
  for (std::size_t n = 0; n < s.size(); ++n) {
    const double h = std::min(1e-6, 0.5 * face_distance(box, p, n));
    PriceProfile up = p;
    PriceProfile down = p;
    up[n] += h;
    down[n] -= h;
    t.compare(g[n], (induced_sp_payoff(s, up) - induced_sp_payoff(s, down)) / (2.0 * h));
  }
}

void leader_hessian_diag(Tally& t, RngStream& rng) {
  const Scenario s = probe_scenario(rng);
  const PriceBox box = price_box(s);
  const PriceProfile p = interior_price(box, rng);
  const Eigen::MatrixXd hess = sp_payoff_hessian(s, p);
  for (std::size_t n = 0; n < s.size(); ++n) {
    const double h = std::min(1e-5, 0.5 * face_distance(box, p, n));
    PriceProfile up = p;
    PriceProfile down = p;
    up[n] += h;
    down[n] -= h;
    const double fd = (induced_sp_payoff(s, up) - 2.0 * induced_sp_payoff(s, p) + induced_sp_payoff(s, down)) / (h * h);
    const auto i = static_cast<Eigen::Index>(n);
    t.compare(hess(i, i), fd);
  }
}

void mlp_backward(Tally& t, RngStream& rng) {
  const auto act = rng.uniform(0.0, 1.0) < 0.5 ? rl::OutputActivation::Linear : rl::OutputActivation::ScaledSigmoid;
  const rl::Mlp net = rl::Mlp::random({4, 6, 5, 3}, act, 1.5, rng);
  Eigen::VectorXd x(4);
  Eigen::VectorXd u(3);
  for (Eigen::Index i = 0; i < 4; ++i) x[i] = rng.uniform(-1.0, 1.0);
  for (Eigen::Index i = 0; i < 3; ++i) u[i] = rng.uniform(-1.0, 1.0);
  const std::vector<double> analytic = net.backward(x, u).flatten();
  const std::vector<double> theta = net.flatten();
  rl::Mlp work = net;
  const double h = 1e-5;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    std::vector<double> shifted = theta;
    shifted[i] += h;
    work.assign(shifted);
    const double up = u.dot(work.forward(x));
    shifted[i] -= 2.0 * h;
    work.assign(shifted);
    const double down = u.dot(work.forward(x));
    t.compare(analytic[i], (up - down) / (2.0 * h));
  }
}

rl::PolicyParams probe_policy(RngStream& rng) {
  rl::PolicyShape shape;
  shape.observation_size = 4;
  shape.action_size = 2;
  shape.hidden = {6, 5};
  shape.actor_output_gain = 1.0;
  rl::PolicyParams p = rl::init_policy(shape, rng);
  for (Eigen::Index i = 0; i < p.log_std.size(); ++i) p.log_std[i] = rng.uniform(-1.5, -0.5);
  return p;
}

rl::TrajectoryBuffer probe_buffer(const rl::PolicyParams& behaviour, RngStream& rng, std::size_t d) {
  rl::TrajectoryBuffer buf(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<double> s(behaviour.observation_size());
    for (double& v : s) v = rng.uniform(-1.0, 1.0);
    rl::ActionSample a = rl::policy_sample(behaviour, s, rng);
    const double value = rl::state_value(behaviour, s);
    buf.push({std::move(s), std::move(a.action), a.log_prob, rng.uniform(-1.0, 1.0), value});
  }
  buf.set_bootstrap(rng.uniform(-0.5, 0.5));
  return buf;
}

void ppo_actor_gradient(Tally& t, RngStream& rng) {
  constexpr double kEps = 0.2;
  constexpr double kGamma = 0.9;
  // Perturb away from the behaviour policy so some ratios leave the clip
  // band; redraw probes whose ratio sits within 1e-3 of a kink, where the
  // objective is not differentiable.
  for (;;) {
    const rl::PolicyParams behaviour = probe_policy(rng);
    const rl::TrajectoryBuffer buf = probe_buffer(behaviour, rng, 2);
    rl::PolicyParams p = behaviour;
    std::vector<double> theta = p.actor.flatten();
    for (double& v : theta) v += rng.uniform(-0.3, 0.3);
    p.actor.assign(theta);
    for (Eigen::Index i = 0; i < p.log_std.size(); ++i) p.log_std[i] += rng.uniform(-0.2, 0.2);

    bool near_kink = false;
    for (std::size_t k = 0; k < buf.size(); ++k) {
      const double r = std::exp(rl::log_prob(p, buf[k].state, buf[k].action) - buf[k].log_prob);
      near_kink = near_kink || std::abs(r - (1.0 - kEps)) < 1e-3 || std::abs(r - (1.0 + kEps)) < 1e-3;
    }
    if (near_kink) continue;

    const rl::ActorGradients g = rl::ppo_actor_gradient(p, buf, kEps, kGamma);
    const std::vector<double> analytic = g.actor.flatten();
    const double h = 1e-5;
    rl::PolicyParams work = p;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      std::vector<double> shifted = theta;
      shifted[i] += h;
      work.actor.assign(shifted);
      const double up = rl::clipped_surrogate(work, buf, kEps, kGamma);
      shifted[i] -= 2.0 * h;
      work.actor.assign(shifted);
      const double down = rl::clipped_surrogate(work, buf, kEps, kGamma);
      t.compare(analytic[i], (up - down) / (2.0 * h));
    }
    work = p;
    for (Eigen::Index i = 0; i < p.log_std.size(); ++i) {
      work.log_std[i] = p.log_std[i] + h;
      const double up = rl::clipped_surrogate(work, buf, kEps, kGamma);
      work.log_std[i] = p.log_std[i] - h;
      const double down = rl::clipped_surrogate(work, buf, kEps, kGamma);
      work.log_std[i] = p.log_std[i];
      t.compare(g.log_std[i], (up - down) / (2.0 * h));
    }
    return;
  }
}

void critic_gradient(Tally& t, RngStream& rng) {
  constexpr double kGamma = 0.9;
  const rl::PolicyParams p = probe_policy(rng);
  const rl::TrajectoryBuffer buf = probe_buffer(p, rng, 4);
  const std::vector<double> analytic = rl::critic_loss_and_gradient(p, buf, kGamma).grad.flatten();
  const std::vector<double> theta = p.critic.flatten();
  rl::PolicyParams work = p;
  const double h = 1e-5;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    std::vector<double> shifted = theta;
    shifted[i] += h;
    work.critic.assign(shifted);
    const double up = rl::critic_loss_and_gradient(work, buf, kGamma).loss;
    shifted[i] -= 2.0 * h;
    work.critic.assign(shifted);
    const double down = rl::critic_loss_and_gradient(work, buf, kGamma).loss;
    t.compare(analytic[i], (up - down) / (2.0 * h));
  }
}

struct Registered {
  std::string name;
  double tolerance;
  double floor;  // relative errors are taken against max(|a|, |b|, floor)
  std::function<void(Tally&, RngStream&)> probe;
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> checks{
      {"leader_gradient", 1e-5, 1e-3, leader_gradient},
      {"leader_hessian_diag", 1e-3, 1e-3, leader_hessian_diag},
      {"mlp_backward", 1e-4, 1e-6, mlp_backward},
      {"ppo_actor_gradient", 1e-4, 1e-6, ppo_actor_gradient},
      {"critic_gradient", 1e-4, 1e-6, critic_gradient},
  };
  return checks;
}

}  // namespace

const std::vector<std::string>& gradcheck_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Registered& r : registry()) out.push_back(r.name);
    return out;
  }();
  return names;
}

std::vector<CheckResult> run_gradcheck(std::uint64_t seed, std::size_t probes, const std::string& corrupt) {
  const auto& names = gradcheck_names();
  if (!corrupt.empty() && std::find(names.begin(), names.end(), corrupt) == names.end()) {
    throw ConfigError("gradcheck.corrupt: unknown check '" + corrupt + "'");
  }
  std::vector<CheckResult> results;
  std::uint64_t stream = kGradcheckStreamBase;
  for (const Registered& check : registry()) {
    RngStream rng(seed, stream++);
    Tally t;
    t.result.name = check.name;
    t.result.tolerance = check.tolerance;
    t.floor = check.floor;
    t.corruption = check.name == corrupt ? 1.01 : 1.0;
    for (std::size_t i = 0; i < probes; ++i) {
      check.probe(t, rng);
      ++t.result.probes;
    }
    t.result.passed = std::isfinite(t.result.max_rel_err) && t.result.max_rel_err <= check.tolerance;
    results.push_back(t.result);
  }
  return results;
}

}  // namespace mcs::cli
