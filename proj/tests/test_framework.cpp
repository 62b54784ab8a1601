#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "toepcov/framework.hpp"
#include "toepcov/quadrature.hpp"

using namespace toepcov;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Single-antenna Rayleigh closed form 1/(1+sqrt(g)(pi/2-atan(1/sqrt(g)))),
// 50-digit oracle values, frozen.
constexpr double kClassic01 = 0.91169885829139620026;
constexpr double kClassic1 = 0.56009915351155737591;
constexpr double kClassic10 = 0.20004961028054148362;

Scenario classic_scenario(double lambda, double alpha, int m) {
  Scenario scn;
  scn.signal = {m, 1.0};
  scn.alpha = alpha;
  scn.noise_power = 0.0;
  scn.serving = NearestPointServing{lambda};
  scn.interferers.push_back({lambda, [](double r) { return r; },
                             [](double) { return kInf; }, GammaGain{1, 1.0},
                             1.0});
  return scn;
}

}  // namespace

TEST_CASE("serving_distance_pdf shapes and normalization") {
  const double lambda = 0.37;
  auto nearest = [&](double r) {
    return serving_distance_pdf(ServingModelTag::nearest_point, lambda, 0.0, r);
  };
  auto norm = adaptive_quadrature(nearest, 0.0, kInf, 1e-10, 0.0, 20000);
  CHECK(norm.converged);
  CHECK(std::abs(norm.value - 1.0) < 1e-9);

  // Mode of the nearest-point density at 1/sqrt(2 pi lambda).
  const double mode = 1.0 / std::sqrt(2.0 * std::acos(-1.0) * lambda);
  const double h = 1e-5;
  CHECK(nearest(mode) > nearest(mode - h));
  CHECK(nearest(mode) > nearest(mode + h));

  const double R = 1.7;
  auto los = [&](double r) {
    return serving_distance_pdf(ServingModelTag::los_ball, lambda, R, r);
  };
  auto los_norm = adaptive_quadrature(los, 0.0, R, 1e-10, 0.0, 20000);
  CHECK(std::abs(los_norm.value - 1.0) < 1e-9);
  CHECK(los(R + 0.1) == 0.0);

  CHECK_THROWS_AS(
      serving_distance_pdf(ServingModelTag::fixed, lambda, 0.0, 1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      serving_distance_pdf(ServingModelTag::nearest_point, 0.0, 0.0, 1.0),
      std::invalid_argument);
}

TEST_CASE("adaptive_quadrature handles the semi-infinite examples") {
  const double pi = std::acos(-1.0);
  const double lambda = 0.12;
  auto density = [&](double r) {
    return 2.0 * pi * lambda * r * std::exp(-pi * lambda * r * r);
  };
  auto one = adaptive_quadrature(density, 0.0, kInf, 1e-9, 0.0, 20000);
  CHECK(one.converged);
  CHECK(std::abs(one.value - 1.0) < 1e-8);

  auto gamma32 = adaptive_quadrature(
      [](double x) { return std::sqrt(x) * std::exp(-x); }, 0.0, kInf, 1e-10,
      0.0, 20000);
  CHECK(std::abs(gamma32.value - 0.88622692545275801365) < 1e-8);

  // Non-decaying tails must be refused, not silently truncated.
  CHECK_THROWS_AS(
      adaptive_quadrature([](double) { return 1.0; }, 0.0, kInf, 1e-9),
      std::runtime_error);
}

TEST_CASE("solve_threshold inverts monotone functions") {
  CHECK(std::abs(solve_threshold([](double x) { return x; }, 0.5, 0.0, 1.0) -
                 0.5) < 1e-9);
  const double root = solve_threshold(
      [](double x) { return 1.0 - std::exp(-x); }, 0.6321205588285577, 0.0,
      10.0);
  CHECK(std::abs(root - 1.0) < 1e-8);
  CHECK_THROWS_AS(
      solve_threshold([](double x) { return x; }, 5.0, 0.0, 1.0),
      std::invalid_argument);
}

TEST_CASE("coverage_theorem1 reproduces the classic single-antenna result") {
  const Scenario scn = classic_scenario(0.25, 4.0, 1);
  CHECK(std::abs(coverage_theorem1(scn, 0.1).value - kClassic01) < 1e-6);
  CHECK(std::abs(coverage_theorem1(scn, 1.0).value - kClassic1) < 1e-6);
  CHECK(std::abs(coverage_theorem1(scn, 10.0).value - kClassic10) < 1e-6);
}

TEST_CASE("coverage_theorem1 is density-invariant for the classic scenario") {
  for (double lambda : {0.01, 0.5, 3.0}) {
    const Scenario scn = classic_scenario(lambda, 4.0, 1);
    CHECK(std::abs(coverage_theorem1(scn, 1.0).value - kClassic1) < 1e-6);
  }
}

TEST_CASE("coverage_theorem1 approaches 1 as gamma vanishes") {
  const Scenario scn = classic_scenario(0.25, 4.0, 2);
  CHECK(coverage_theorem1(scn, 1e-9).value > 0.9999);
}

TEST_CASE("coverage_theorem1 is non-increasing in gamma") {
  for (int m : {1, 4}) {
    const Scenario scn = classic_scenario(0.25, 4.0, m);
    double prev = 2.0;
    for (double g = 0.01; g < 11.0; g *= std::sqrt(10.0)) {
      const double v = coverage_theorem1(scn, g).value;
      CHECK(v <= prev + 1e-9);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      prev = v;
    }
  }
}

TEST_CASE("single-antenna coverage_theorem1 equals the direct Laplace integral") {
  const double pi = std::acos(-1.0);
  for (double alpha : {3.1, 4.0, 5.5}) {
    for (double gamma : {0.3, 2.0}) {
      const double lambda = 0.8;
      const Scenario scn = classic_scenario(lambda, alpha, 1);
      const double via_theorem = coverage_theorem1(scn, gamma, 1e-10).value;
      const auto direct = adaptive_quadrature(
          [&](double u) {
            const double r = std::sqrt(u / (pi * lambda));
            return std::exp(-u) * std::exp(scenario_qk(scn, 0, r, gamma));
          },
          0.0, 30.0, 1e-12, 0.0, 40000);
      CHECK(std::abs(via_theorem - direct.value) < 1e-9);
    }
  }
}

TEST_CASE("noise lowers coverage") {
  Scenario noisy = classic_scenario(0.25, 4.0, 2);
  noisy.noise_power = 0.1;
  const Scenario clean = classic_scenario(0.25, 4.0, 2);
  CHECK(coverage_theorem1(noisy, 1.0).value <
        coverage_theorem1(clean, 1.0).value);
}

TEST_CASE("fixed-serving scenarios evaluate the column directly") {
  Scenario scn;
  scn.signal = {1, 1.0};
  scn.serving = FixedServing{2.0};
  scn.qk_provider = [](int, double, double) { return std::log(0.7); };
  const auto res = coverage_theorem1(scn, 1.0);
  CHECK(res.value == doctest::Approx(0.7).epsilon(1e-12));
  CHECK_FALSE(res.clamp_warning);
  CHECK_FALSE(res.negative_column);
}

TEST_CASE("clamping and negative-column diagnostics are surfaced") {
  Scenario over;
  over.signal = {1, 1.0};
  over.serving = FixedServing{1.0};
  over.qk_provider = [](int, double, double) { return 0.5; };
  const auto clamped = coverage_theorem1(over, 1.0);
  CHECK(clamped.value == 1.0);
  CHECK(clamped.clamp_warning);

  Scenario neg;
  neg.signal = {2, 1.0};
  neg.serving = FixedServing{1.0};
  neg.qk_provider = [](int k, double, double) { return k == 0 ? 0.0 : -1.0; };
  const auto res = coverage_theorem1(neg, 1.0);
  CHECK(res.negative_column);
}

TEST_CASE("scenario validation rejects malformed input") {
  Scenario bad_alpha = classic_scenario(0.25, 4.0, 1);
  bad_alpha.alpha = 2.0;
  CHECK_THROWS_AS(coverage_theorem1(bad_alpha, 1.0), std::invalid_argument);

  const Scenario scn = classic_scenario(0.25, 4.0, 1);
  CHECK_THROWS_AS(coverage_theorem1(scn, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(coverage_theorem1(scn, -1.0), std::invalid_argument);

  Scenario inverted = classic_scenario(0.25, 4.0, 1);
  inverted.interferers[0].inner = [](double r) { return 2.0 * r; };
  inverted.interferers[0].outer = [](double r) { return r; };
  CHECK_THROWS_AS(coverage_theorem1(inverted, 1.0), std::invalid_argument);

  Scenario bad_gain = classic_scenario(0.25, 4.0, 1);
  bad_gain.interferers[0].gain.shape = 0;
  CHECK_THROWS_AS(coverage_theorem1(bad_gain, 1.0), std::invalid_argument);
}
