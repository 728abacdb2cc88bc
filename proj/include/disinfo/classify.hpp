#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace disinfo::classify {

// Shipped defaults come from calibrate() on a generated labeled corpus
// (tools/calibrate reproduces them); they satisfy (0,0,0) -> organic and
// (1,1,1) -> orchestrated_inauthentic.
struct FusionWeights {
  double w_deception = 5.0;
  double w_coordination = 6.0;
  double w_agenda = 4.0;
  double bias = -6.0;
};

inline constexpr double kLabelThreshold = 0.5;

struct NarrativeAssessment {
  std::string narrative_id;
  double deception = 0.0;
  double coordination = 0.0;
  double agenda = 0.0;
  double fused = 0.0;
  std::string label;  // "organic" or "orchestrated_inauthentic"
  std::map<std::string, double> feature_vector;
  std::string config_fingerprint;
};

struct FuseResult {
  double fused = 0.0;
  std::string label;
};

// fused = logistic(w_d*d + w_c*c + w_a*a + bias); label is
// orchestrated_inauthentic iff fused >= 0.5.
FuseResult fuse(double deception, double coordination, double agenda,
                const FusionWeights& weights);

struct CalibrateParams {
  double learning_rate = 0.5;
  int iterations = 2000;
  std::uint64_t seed = 7;
};

struct CalibrationResult {
  FusionWeights weights;
  double training_accuracy = 0.0;
  double final_loss = 0.0;
  bool projected = false;  // a negative axis weight was clamped to 0 after the fit
};

// Mean negative log-likelihood over rows of x (n x 3) against labels y in
// {0,1}; w = (w_d, w_c, w_a, bias). Exposed so the gradient can be checked
// against finite differences.
double loss_and_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         const Eigen::Vector4d& w, Eigen::Vector4d& grad);

// Full-batch gradient descent, deterministic for a given seed. Throws
// DegenerateLabels unless both classes appear.
CalibrationResult calibrate(const std::vector<std::array<double, 3>>& scores,
                            const std::vector<int>& labels, const CalibrateParams& params = {});

}  // namespace disinfo::classify
