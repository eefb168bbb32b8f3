#include "mcs/rl/checkpoint.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "mcs/csv.hpp"
#include "mcs/errors.hpp"

namespace mcs::rl {

namespace {

void write_net(std::ostream& out, const std::string& name, const Mlp& net) {
  out << name << "_sizes " << net.sizes().size();
  for (std::size_t s : net.sizes()) out << ' ' << s;
  out << '\n';
  const std::vector<double> flat = net.flatten();
  out << name << ' ' << flat.size();
  for (double v : flat) out << ' ' << format_double(v);
  out << '\n';
}

void expect(std::istream& in, const std::string& token) {
  std::string got;
  if (!(in >> got) || got != token) {
    throw StateError("checkpoint: expected '" + token + "', got '" + got + "'");
  }
}

std::vector<double> read_array(std::istream& in, const std::string& name) {
  expect(in, name);
  std::size_t count = 0;
  if (!(in >> count)) throw StateError("checkpoint: bad length for " + name);
  std::vector<double> values(count);
  for (double& v : values) {
    std::string tok;
    if (!(in >> tok)) throw StateError("checkpoint: truncated " + name);
    v = std::stod(tok);
  }
  return values;
}

Mlp read_net(std::istream& in, const std::string& name, OutputActivation activation, double scale) {
  expect(in, name + "_sizes");
  std::size_t count = 0;
  if (!(in >> count) || count < 2) throw StateError("checkpoint: bad layer count for " + name);
  std::vector<std::size_t> sizes(count);
  for (std::size_t& s : sizes) {
    if (!(in >> s)) throw StateError("checkpoint: bad layer size for " + name);
  }
  Mlp net(sizes, activation, scale);
  net.assign(read_array(in, name));
  return net;
}

}  // namespace

void save_checkpoint(std::ostream& out, const PolicyParams& policy, const ConfigEcho& echo) {
  out << kCheckpointMagic << ' ' << kCheckpointVersion << '\n';
  out << "config " << echo.size() << '\n';
  for (const auto& [key, value] : echo) out << key << ' ' << value << '\n';
  out << "p_max " << format_double(policy.p_max()) << '\n';
  write_net(out, "actor", policy.actor);
  out << "log_std " << policy.log_std.size();
  for (Eigen::Index i = 0; i < policy.log_std.size(); ++i) out << ' ' << format_double(policy.log_std[i]);
  out << '\n';
  write_net(out, "critic", policy.critic);
  out << "end\n";
}

PolicyParams load_checkpoint(std::istream& in, ConfigEcho* echo) {
  expect(in, kCheckpointMagic);
  int version = 0;
  if (!(in >> version) || version != kCheckpointVersion) {
    throw StateError("checkpoint: unsupported version " + std::to_string(version));
  }
  expect(in, "config");
  std::size_t entries = 0;
  if (!(in >> entries)) throw StateError("checkpoint: bad config count");
  in >> std::ws;
  for (std::size_t i = 0; i < entries; ++i) {
    std::string line;
    std::getline(in, line);
    const auto space = line.find(' ');
    if (echo) echo->emplace_back(line.substr(0, space), space == std::string::npos ? "" : line.substr(space + 1));
  }
  expect(in, "p_max");
  std::string tok;
  in >> tok;
  const double p_max = std::stod(tok);

  PolicyParams policy;
  policy.actor = read_net(in, "actor", OutputActivation::ScaledSigmoid, p_max);
  const std::vector<double> log_std = read_array(in, "log_std");
  if (log_std.size() != policy.actor.output_size()) throw StateError("checkpoint: log_std length mismatch");
  policy.log_std = Eigen::Map<const Eigen::VectorXd>(log_std.data(), static_cast<Eigen::Index>(log_std.size()));
  policy.critic = read_net(in, "critic", OutputActivation::Linear, 1.0);
  expect(in, "end");
  return policy;
}

}  // namespace mcs::rl
