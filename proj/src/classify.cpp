#include "disinfo/classify.hpp"

#include <cmath>

#include "disinfo/errors.hpp"
#include "disinfo/hashing.hpp"

namespace disinfo::classify {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + exp(z)) without overflow
double log1pexp(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

}  // namespace

FuseResult fuse(double deception, double coordination, double agenda,
                const FusionWeights& weights) {
  for (double v : {deception, coordination, agenda})
    if (v < 0.0 || v > 1.0 || !std::isfinite(v)) throw BadConfig("axis score out of [0,1]");
  FuseResult out;
  const double z = weights.w_deception * deception + weights.w_coordination * coordination +
                   weights.w_agenda * agenda + weights.bias;
  out.fused = logistic(z);
  out.label = out.fused >= kLabelThreshold ? "orchestrated_inauthentic" : "organic";
  return out;
}

double loss_and_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         const Eigen::Vector4d& w, Eigen::Vector4d& grad) {
  const auto n = x.rows();
  if (n == 0 || x.cols() != 3 || y.size() != n) throw BadConfig("bad calibration batch shape");
  const Eigen::VectorXd z = x * w.head<3>() + Eigen::VectorXd::Constant(n, w(3));
  // NLL = mean(log(1+e^z) - y*z); d/dz = sigmoid(z) - y
  double loss = 0.0;
  Eigen::VectorXd residual(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    loss += log1pexp(z(i)) - y(i) * z(i);
    residual(i) = logistic(z(i)) - y(i);
  }
  loss /= static_cast<double>(n);
  grad.head<3>() = x.transpose() * residual / static_cast<double>(n);
  grad(3) = residual.mean();
  return loss;
}

CalibrationResult calibrate(const std::vector<std::array<double, 3>>& scores,
                            const std::vector<int>& labels, const CalibrateParams& params) {
  const std::size_t n = scores.size();
  if (n == 0 || labels.size() != n) throw BadConfig("calibration needs matched scores and labels");
  bool any0 = false;
  bool any1 = false;
  for (int l : labels) {
    if (l == 0) any0 = true;
    else if (l == 1) any1 = true;
    else throw BadConfig("labels must be 0 or 1");
  }
  if (!any0 || !any1) throw DegenerateLabels{};

  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 3);
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double v = scores[i][static_cast<std::size_t>(j)];
      if (v < 0.0 || v > 1.0 || !std::isfinite(v)) throw BadConfig("axis score out of [0,1]");
      x(static_cast<Eigen::Index>(i), j) = v;
    }
    y(static_cast<Eigen::Index>(i)) = labels[i];
  }

  // Small symmetric random init so runs with the same seed coincide bit for bit.
  SplitMix64 rng{params.seed};
  Eigen::Vector4d w;
  for (int j = 0; j < 4; ++j) {
    const double u = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;  // [0,1)
    w(j) = (u - 0.5) * 0.02;
  }

  Eigen::Vector4d grad;
  double loss = 0.0;
  for (int it = 0; it < params.iterations; ++it) {
    loss = loss_and_gradient(x, y, w, grad);
    w -= params.learning_rate * grad;
  }
  loss = loss_and_gradient(x, y, w, grad);

  CalibrationResult out;
  out.final_loss = loss;
  // More evidence on any axis must never pull toward organic.
  for (int j = 0; j < 3; ++j) {
    if (w(j) < 0.0) {
      w(j) = 0.0;
      out.projected = true;
    }
  }
  out.weights = {w(0), w(1), w(2), w(3)};

  int correct = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto fused = fuse(scores[i][0], scores[i][1], scores[i][2], out.weights);
    const int predicted = fused.fused >= kLabelThreshold ? 1 : 0;
    if (predicted == labels[i]) ++correct;
  }
  out.training_accuracy = static_cast<double>(correct) / static_cast<double>(n);
  return out;
}

}  // namespace disinfo::classify
