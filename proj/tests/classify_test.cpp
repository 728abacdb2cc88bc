#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "disinfo/classify.hpp"
#include "disinfo/errors.hpp"
#include "disinfo/hashing.hpp"

using namespace disinfo;
using namespace disinfo::classify;

namespace {

double logi(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double uniform01(SplitMix64& rng) {
  return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

}  // namespace

// --- fuse -----------------------------------------------------------------------

TEST_CASE("all-zero evidence is organic and all-one is orchestrated") {
  const FusionWeights w;
  const auto lo = fuse(0.0, 0.0, 0.0, w);
  CHECK(lo.fused == doctest::Approx(logi(-6.0)));
  CHECK(lo.fused < 0.01);
  CHECK(lo.label == "organic");

  const auto hi = fuse(1.0, 1.0, 1.0, w);
  CHECK(hi.fused == doctest::Approx(logi(9.0)));
  CHECK(hi.fused > 0.999);
  CHECK(hi.label == "orchestrated_inauthentic");
}

TEST_CASE("the threshold itself classifies as orchestrated") {
  const FusionWeights zero = {0.0, 0.0, 0.0, 0.0};
  const auto r = fuse(0.3, 0.3, 0.3, zero);
  CHECK(r.fused == doctest::Approx(0.5));
  CHECK(r.label == "orchestrated_inauthentic");
}

TEST_CASE("fused is monotone in each axis") {
  const FusionWeights w;
  SplitMix64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const double d = uniform01(rng), c = uniform01(rng), a = uniform01(rng);
    const double base = fuse(d, c, a, w).fused;
    CHECK(fuse(std::min(1.0, d + 0.05), c, a, w).fused >= base);
    CHECK(fuse(d, std::min(1.0, c + 0.05), a, w).fused >= base);
    CHECK(fuse(d, c, std::min(1.0, a + 0.05), w).fused >= base);
  }
}

TEST_CASE("positive rescaling of all weights never flips the label") {
  SplitMix64 rng(17);
  for (int i = 0; i < 200; ++i) {
    FusionWeights w = {uniform01(rng) * 8 - 2, uniform01(rng) * 8 - 2, uniform01(rng) * 8 - 2,
                       uniform01(rng) * 8 - 6};
    const double k = 0.1 + uniform01(rng) * 5.0;
    FusionWeights scaled = {w.w_deception * k, w.w_coordination * k, w.w_agenda * k, w.bias * k};
    const double d = uniform01(rng), c = uniform01(rng), a = uniform01(rng);
    CHECK(fuse(d, c, a, w).label == fuse(d, c, a, scaled).label);
  }
}

TEST_CASE("axis scores outside the unit interval are rejected") {
  const FusionWeights w;
  CHECK_THROWS_AS(fuse(-0.1, 0.0, 0.0, w), BadConfig);
  CHECK_THROWS_AS(fuse(0.0, 1.1, 0.0, w), BadConfig);
  CHECK_THROWS_AS(fuse(0.0, 0.0, std::nan(""), w), BadConfig);
}

// --- gradient -------------------------------------------------------------------

TEST_CASE("the zero-weight single-row gradient is analytic") {
  Eigen::MatrixXd x(1, 3);
  x << 0.0, 0.0, 0.0;
  Eigen::VectorXd y(1);
  y << 0.0;
  Eigen::Vector4d grad;
  const double loss = loss_and_gradient(x, y, Eigen::Vector4d::Zero(), grad);
  CHECK(loss == doctest::Approx(std::log(2.0)));
  CHECK(grad(0) == doctest::Approx(0.0));
  CHECK(grad(3) == doctest::Approx(0.5));
}

TEST_CASE("the analytic gradient matches central finite differences") {
  SplitMix64 rng(0x9badf00d);
  for (int batch = 0; batch < 20; ++batch) {
    const int n = 5 + static_cast<int>(rng.next() % 46);
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < 3; ++j) x(i, j) = uniform01(rng);
      y(i) = static_cast<double>(rng.next() % 2);
    }
    Eigen::Vector4d w;
    for (int j = 0; j < 4; ++j) w(j) = uniform01(rng) * 8.0 - 4.0;

    Eigen::Vector4d grad;
    loss_and_gradient(x, y, w, grad);

    const double h = 1e-6;
    for (int j = 0; j < 4; ++j) {
      Eigen::Vector4d wp = w, wm = w, scratch;
      wp(j) += h;
      wm(j) -= h;
      const double fd =
          (loss_and_gradient(x, y, wp, scratch) - loss_and_gradient(x, y, wm, scratch)) /
          (2.0 * h);
      CAPTURE(batch);
      CAPTURE(j);
      CHECK(std::abs(fd - grad(j)) <= 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("bad batch shapes are rejected") {
  Eigen::Vector4d grad;
  Eigen::MatrixXd x(2, 3);
  x.setZero();
  Eigen::VectorXd y(3);
  y.setZero();
  CHECK_THROWS_AS(loss_and_gradient(x, y, Eigen::Vector4d::Zero(), grad), BadConfig);
  CHECK_THROWS_AS(
      loss_and_gradient(Eigen::MatrixXd(0, 3), Eigen::VectorXd(0), Eigen::Vector4d::Zero(), grad),
      BadConfig);
}

// --- calibrate ------------------------------------------------------------------

namespace {

void separable_corpus(SplitMix64& rng, int n, std::vector<std::array<double, 3>>& scores,
                      std::vector<int>& labels) {
  for (int i = 0; i < n; ++i) {
    const int label = i % 2;
    const double base = label ? 0.85 : 0.15;
    std::array<double, 3> row;
    for (auto& v : row) v = std::clamp(base + (uniform01(rng) - 0.5) * 0.15, 0.0, 1.0);
    scores.push_back(row);
    labels.push_back(label);
  }
}

}  // namespace

TEST_CASE("a separable corpus calibrates to perfect training accuracy") {
  SplitMix64 rng(21);
  std::vector<std::array<double, 3>> scores;
  std::vector<int> labels;
  separable_corpus(rng, 200, scores, labels);
  const auto r = calibrate(scores, labels);
  CHECK(r.training_accuracy == doctest::Approx(1.0));
  CHECK(r.final_loss < 0.2);
  CHECK(r.weights.w_deception >= 0.0);
  CHECK(r.weights.w_coordination >= 0.0);
  CHECK(r.weights.w_agenda >= 0.0);
}

TEST_CASE("calibration is deterministic for a fixed seed") {
  SplitMix64 rng(22);
  std::vector<std::array<double, 3>> scores;
  std::vector<int> labels;
  separable_corpus(rng, 100, scores, labels);
  const auto a = calibrate(scores, labels);
  const auto b = calibrate(scores, labels);
  CHECK(a.weights.w_deception == b.weights.w_deception);
  CHECK(a.weights.w_coordination == b.weights.w_coordination);
  CHECK(a.weights.w_agenda == b.weights.w_agenda);
  CHECK(a.weights.bias == b.weights.bias);
  CHECK(a.final_loss == b.final_loss);
}

TEST_CASE("label-free features train close to the base rate") {
  SplitMix64 rng(23);
  double total = 0.0;
  const int shuffles = 20;
  for (int s = 0; s < shuffles; ++s) {
    std::vector<std::array<double, 3>> scores;
    std::vector<int> labels;
    for (int i = 0; i < 500; ++i) {
      scores.push_back({uniform01(rng), uniform01(rng), uniform01(rng)});
      labels.push_back(i % 2);
    }
    // shuffle labels independently of features
    for (std::size_t i = labels.size(); i > 1; --i)
      std::swap(labels[i - 1], labels[rng.next() % i]);
    total += calibrate(scores, labels).training_accuracy;
  }
  const double mean = total / shuffles;
  CHECK(mean > 0.42);
  CHECK(mean < 0.68);
}

TEST_CASE("an anti-correlated axis is clamped to zero") {
  SplitMix64 rng(24);
  std::vector<std::array<double, 3>> scores;
  std::vector<int> labels;
  for (int i = 0; i < 200; ++i) {
    const int label = i % 2;
    const double base = label ? 0.9 : 0.1;
    const double jitter = (uniform01(rng) - 0.5) * 0.1;
    scores.push_back({std::clamp(base + jitter, 0.0, 1.0),
                      std::clamp(base - jitter, 0.0, 1.0),
                      std::clamp(1.0 - base + jitter, 0.0, 1.0)});
    labels.push_back(label);
  }
  const auto r = calibrate(scores, labels);
  CHECK(r.projected);
  CHECK(r.weights.w_agenda == 0.0);
}

TEST_CASE("degenerate and malformed calibration inputs throw") {
  std::vector<std::array<double, 3>> scores = {{0.1, 0.1, 0.1}, {0.9, 0.9, 0.9}};
  CHECK_THROWS_AS(calibrate(scores, {1, 1}), DegenerateLabels);
  CHECK_THROWS_AS(calibrate(scores, {0, 0}), DegenerateLabels);
  CHECK_THROWS_AS(calibrate(scores, {0}), BadConfig);
  CHECK_THROWS_AS(calibrate(scores, {0, 2}), BadConfig);
  CHECK_THROWS_AS(calibrate({{0.1, 0.1, 1.5}, {0.9, 0.9, 0.9}}, {0, 1}), BadConfig);
  CHECK_THROWS_AS(calibrate({}, {}), BadConfig);
}
