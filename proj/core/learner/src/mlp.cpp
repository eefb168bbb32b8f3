#include "mcs/rl/mlp.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "mcs/errors.hpp"

namespace mcs::rl {

namespace {

double sigmoid(double a) { return 1.0 / (1.0 + std::exp(-a)); }

}  // namespace

void MlpGradients::set_zero() {
  for (auto& w : weights) w.setZero();
  for (auto& b : biases) b.setZero();
}

MlpGradients& MlpGradients::operator+=(const MlpGradients& other) {
  if (other.weights.size() != weights.size()) throw ShapeError("gradient layer count mismatch");
  for (std::size_t l = 0; l < weights.size(); ++l) {
    weights[l] += other.weights[l];
    biases[l] += other.biases[l];
  }
  return *this;
}

MlpGradients& MlpGradients::operator*=(double factor) {
  for (auto& w : weights) w *= factor;
  for (auto& b : biases) b *= factor;
  return *this;
}

std::vector<double> MlpGradients::flatten() const {
  std::vector<double> out;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    const Eigen::MatrixXd& w = weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) out.push_back(w(r, c));
    }
    for (Eigen::Index i = 0; i < biases[l].size(); ++i) out.push_back(biases[l][i]);
  }
  return out;
}

Mlp::Mlp(std::vector<std::size_t> sizes, OutputActivation activation, double output_scale)
    : sizes_(std::move(sizes)), activation_(activation), output_scale_(output_scale) {
  if (sizes_.size() < 2) throw ShapeError("an Mlp needs at least input and output sizes");
  for (std::size_t s : sizes_) {
    if (s == 0) throw ShapeError("Mlp layer sizes must be positive");
  }
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const auto rows = static_cast<Eigen::Index>(sizes_[l + 1]);
    const auto cols = static_cast<Eigen::Index>(sizes_[l]);
    weights_.push_back(Eigen::MatrixXd::Zero(rows, cols));
    biases_.push_back(Eigen::VectorXd::Zero(rows));
  }
}

Mlp Mlp::random(std::vector<std::size_t> sizes, OutputActivation activation, double output_scale,
                RngStream& rng, double output_gain) {
  Mlp net(std::move(sizes), activation, output_scale);
  for (std::size_t l = 0; l < net.weights_.size(); ++l) {
    Eigen::MatrixXd& w = net.weights_[l];
    const double bound = 1.0 / std::sqrt(static_cast<double>(w.cols()));
    const double gain = l + 1 == net.weights_.size() ? output_gain : 1.0;
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = gain * rng.uniform(-bound, bound);
    }
  }
  return net;
}

std::size_t Mlp::num_parameters() const {
  std::size_t count = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    count += static_cast<std::size_t>(weights_[l].size() + biases_[l].size());
  }
  return count;
}

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& input) const {
  if (static_cast<std::size_t>(input.size()) != input_size()) {
    throw ShapeError("Mlp input length " + std::to_string(input.size()) + ", expected " +
                     std::to_string(input_size()));
  }
  Eigen::VectorXd h = input;
  const std::size_t last = weights_.size() - 1;
  for (std::size_t l = 0; l < last; ++l) {
    h = (weights_[l] * h + biases_[l]).array().tanh().matrix();
  }
  Eigen::VectorXd a = weights_[last] * h + biases_[last];
  if (activation_ == OutputActivation::ScaledSigmoid) {
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = output_scale_ * sigmoid(a[i]);
  }
  return a;
}

void Mlp::accumulate_backward(const Eigen::VectorXd& input, const Eigen::VectorXd& upstream,
                              MlpGradients& into) const {
  if (static_cast<std::size_t>(input.size()) != input_size()) {
    throw ShapeError("Mlp input length mismatch in backward");
  }
  if (static_cast<std::size_t>(upstream.size()) != output_size()) {
    throw ShapeError("Mlp upstream gradient length mismatch");
  }
  if (into.weights.size() != weights_.size()) throw ShapeError("gradient container not shaped");

  const std::size_t layers = weights_.size();
  std::vector<Eigen::VectorXd> activations;  // input to each layer
  activations.reserve(layers);
  activations.push_back(input);
  for (std::size_t l = 0; l + 1 < layers; ++l) {
    activations.push_back((weights_[l] * activations.back() + biases_[l]).array().tanh().matrix());
  }

  Eigen::VectorXd local_grad = upstream;
  if (activation_ == OutputActivation::ScaledSigmoid) {
    const Eigen::VectorXd a = weights_[layers - 1] * activations.back() + biases_[layers - 1];
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double s = sigmoid(a[i]);
      local_grad[i] *= output_scale_ * s * (1.0 - s);
    }
  }

  for (std::size_t l = layers; l-- > 0;) {
    into.weights[l].noalias() += local_grad * activations[l].transpose();
    into.biases[l] += local_grad;
    if (l == 0) break;
    Eigen::VectorXd back = weights_[l].transpose() * local_grad;
    const Eigen::VectorXd& h = activations[l];
    local_grad = back.array() * (1.0 - h.array().square());
  }
}

MlpGradients Mlp::backward(const Eigen::VectorXd& input, const Eigen::VectorXd& upstream) const {
  MlpGradients grad = zero_gradients();
  accumulate_backward(input, upstream, grad);
  return grad;
}

MlpGradients Mlp::zero_gradients() const {
  MlpGradients grad;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    grad.weights.push_back(Eigen::MatrixXd::Zero(weights_[l].rows(), weights_[l].cols()));
    grad.biases.push_back(Eigen::VectorXd::Zero(biases_[l].size()));
  }
  return grad;
}

void Mlp::apply(const MlpGradients& grad, double step) {
  if (grad.weights.size() != weights_.size()) throw ShapeError("gradient layer count mismatch");
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    weights_[l] += step * grad.weights[l];
    biases_[l] += step * grad.biases[l];
  }
}

std::vector<double> Mlp::flatten() const {
  std::vector<double> out;
  out.reserve(num_parameters());
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    const Eigen::MatrixXd& w = weights_[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) out.push_back(w(r, c));
    }
    for (Eigen::Index i = 0; i < biases_[l].size(); ++i) out.push_back(biases_[l][i]);
  }
  return out;
}

void Mlp::assign(std::span<const double> flat) {
  if (flat.size() != num_parameters()) {
    throw ShapeError("flat parameter length " + std::to_string(flat.size()) + ", expected " +
                     std::to_string(num_parameters()));
  }
  std::size_t k = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Eigen::MatrixXd& w = weights_[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = flat[k++];
    }
    for (Eigen::Index i = 0; i < biases_[l].size(); ++i) biases_[l][i] = flat[k++];
  }
}

bool Mlp::all_finite() const {
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    if (!weights_[l].allFinite() || !biases_[l].allFinite()) return false;
  }
  return true;
}

}  // namespace mcs::rl
