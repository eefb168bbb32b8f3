#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "mcs/rng.hpp"

namespace mcs::rl {

enum class OutputActivation {
  Linear,         // critic head
  ScaledSigmoid,  // actor head: output_scale * sigmoid(a), range (0, output_scale)
};

/// Parameter-shaped gradient container for an Mlp.
struct MlpGradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  void set_zero();
  MlpGradients& operator+=(const MlpGradients& other);
  MlpGradients& operator*=(double factor);
  /// Same order as Mlp::flatten.
  std::vector<double> flatten() const;
};

/// Feed-forward network: affine + tanh on every hidden layer, affine + the
/// configured output activation on the last layer.
class Mlp {
 public:
  Mlp() = default;
  /// Zero-initialized parameters. `sizes` = {input, hidden..., output}.
  Mlp(std::vector<std::size_t> sizes, OutputActivation activation, double output_scale = 1.0);

  /// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, zero biases; the last
  /// layer's weights are multiplied by `output_gain`.
  static Mlp random(std::vector<std::size_t> sizes, OutputActivation activation,
                    double output_scale, RngStream& rng, double output_gain = 1.0);

  const std::vector<std::size_t>& sizes() const { return sizes_; }
  OutputActivation activation() const { return activation_; }
  double output_scale() const { return output_scale_; }
  std::size_t input_size() const { return sizes_.front(); }
  std::size_t output_size() const { return sizes_.back(); }
  std::size_t num_layers() const { return weights_.size(); }
  std::size_t num_parameters() const;

  std::vector<Eigen::MatrixXd>& weights() { return weights_; }
  const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
  std::vector<Eigen::VectorXd>& biases() { return biases_; }
  const std::vector<Eigen::VectorXd>& biases() const { return biases_; }

  /// Throws ShapeError on input length mismatch.
  Eigen::VectorXd forward(const Eigen::VectorXd& input) const;

  /// Reverse-mode gradient of dot(upstream, forward(input)) w.r.t. all
  /// parameters, added into `into` (which must be shaped by zero_gradients()).
  void accumulate_backward(const Eigen::VectorXd& input, const Eigen::VectorXd& upstream,
                           MlpGradients& into) const;
  MlpGradients backward(const Eigen::VectorXd& input, const Eigen::VectorXd& upstream) const;

  MlpGradients zero_gradients() const;
  /// params += step * grad
  void apply(const MlpGradients& grad, double step);

  /// Row-major weights then bias, layer by layer.
  std::vector<double> flatten() const;
  void assign(std::span<const double> flat);
  bool all_finite() const;

 private:
  std::vector<std::size_t> sizes_;
  OutputActivation activation_ = OutputActivation::Linear;
  double output_scale_ = 1.0;
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

}  // namespace mcs::rl
