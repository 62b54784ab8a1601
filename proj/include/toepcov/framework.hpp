#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "toepcov/quadrature.hpp"

namespace toepcov {

// Gamma(shape, scale) channel-gain law; shape is an antenna-derived integer.
struct GammaGain {
  int shape = 1;
  double scale = 1.0;
};

// A PPP of interferers on the annulus [inner(r0), outer(r0)] around the
// receiver, each with i.i.d. Gamma gain and a fixed power multiplier.
// outer may return +infinity for a full far field.
struct InterfererClass {
  double density = 0.0;
  std::function<double(double)> inner;
  std::function<double(double)> outer;
  GammaGain gain;
  double power = 1.0;
};

struct FixedServing {
  double r0 = 1.0;
};
struct NearestPointServing {
  double lambda = 1.0;
};
struct LosBallServing {
  double lambda = 1.0;
  double R = 1.0;
};
using ServingModel =
    std::variant<FixedServing, NearestPointServing, LosBallServing>;

struct Scenario {
  GammaGain signal;
  double alpha = 4.0;
  double noise_power = 0.0;  // sigma_n^2, normalized
  std::vector<InterfererClass> interferers;
  ServingModel serving = FixedServing{1.0};
  // Optional override for the exponent entries q_k(r, gamma); when empty the
  // entries come from scenario_qk below.
  std::function<double(int, double, double)> qk_provider;

  double delta() const { return 2.0 / alpha; }
};

enum class Method { analytic, monte_carlo, bound_lower, bound_upper };

struct CoverageResult {
  double value = 0.0;
  Method method = Method::analytic;
  double abs_error = 0.0;
  bool clamp_warning = false;    // clamping to [0,1] moved the value > 1e-6
  bool negative_column = false;  // an exponential-column entry was negative
};

// Exponent entry q_k at serving distance r and threshold gamma, assembled
// from the scenario's interferer classes (closed-form annulus tails) plus
// the noise split: -s*sigma^2 into q0 and +s*sigma^2 into q1, s = gamma
// r^alpha / theta_signal.
double scenario_qk(const Scenario& scn, int k, double r, double gamma);

// Coverage probability: the exponential-column sum at fixed r0, or its
// integral against the serving-distance density (adaptive quadrature after
// the u = pi*lambda*r^2 substitution).  Throws std::runtime_error if the
// quadrature cannot reach abs_tol; the message carries the achieved error.
CoverageResult coverage_theorem1(const Scenario& scn, double gamma,
                                 double abs_tol = 1e-7);

enum class ServingModelTag { fixed, nearest_point, los_ball };

// Serving-distance density: nearest-point 2*pi*lambda*r*exp(-pi*lambda*r^2),
// or the same conditioned on r <= R (LOS ball).  The fixed-r0 model has no
// density (Dirac handled by the caller) and is rejected.
double serving_distance_pdf(ServingModelTag model, double lambda_t, double R,
                            double r);

// Root of f(x) = target on a bracket, relative tolerance 1e-9.  Throws
// std::invalid_argument when the bracket does not straddle the target.
double solve_threshold(const std::function<double(double)>& f, double target,
                       double lo, double hi);

}  // namespace toepcov
