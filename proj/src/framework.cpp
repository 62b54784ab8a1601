#include "toepcov/framework.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "toepcov/rootfind.hpp"
#include "toepcov/specfun.hpp"
#include "toepcov/toeplitz.hpp"

namespace toepcov {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_scenario(const Scenario& scn) {
  if (scn.signal.shape < 1 || !(scn.signal.scale > 0.0))
    throw std::invalid_argument("Scenario: signal gain needs shape>=1, scale>0");
  if (!(scn.alpha > 2.0))
    throw std::invalid_argument("Scenario: alpha must exceed 2");
  if (scn.noise_power < 0.0)
    throw std::invalid_argument("Scenario: negative noise power");
  for (const auto& cls : scn.interferers) {
    if (cls.density < 0.0)
      throw std::invalid_argument("Scenario: negative interferer density");
    if (cls.gain.shape < 1 || !(cls.gain.scale > 0.0) || !(cls.power > 0.0))
      throw std::invalid_argument("Scenario: bad interferer gain law");
    if (!cls.inner || !cls.outer)
      throw std::invalid_argument("Scenario: annulus edges not set");
  }
  if (const auto* fx = std::get_if<FixedServing>(&scn.serving)) {
    if (!(fx->r0 > 0.0)) throw std::invalid_argument("Scenario: r0 <= 0");
  } else if (const auto* np = std::get_if<NearestPointServing>(&scn.serving)) {
    if (!(np->lambda > 0.0))
      throw std::invalid_argument("Scenario: serving density <= 0");
  } else if (const auto* lb = std::get_if<LosBallServing>(&scn.serving)) {
    if (!(lb->lambda > 0.0) || !(lb->R > 0.0))
      throw std::invalid_argument("Scenario: bad LOS ball parameters");
  }
}

// Tail integral of the q0 exponent over [d, inf) for one class:
//   T(d) = d^2 (2F1(-delta, U; 1-delta; -c d^-alpha) - 1),
// with the d -> 0 and d -> inf limits in closed form.
double tail_t(double d, double c, int u, double alpha) {
  const double delta = 2.0 / alpha;
  if (std::isinf(d)) return 0.0;
  if (d == 0.0)
    return std::exp(ln_gamma(1.0 - delta) + ln_gamma(u + delta) -
                    ln_gamma(u)) *
           std::pow(c, delta);
  const double y = c * std::pow(d, -alpha);
  return d * d * (gauss_2f1(-delta, u, 1.0 - delta, -y) - 1.0);
}

// Tail integral generating q_k (k >= 1) over [d, inf) for one class:
//   G_k(d) = (delta/k!) (U)_k y^k d^2 / (k-delta) 2F1(k-delta, U+k;
//            k+1-delta; -y),  y = c d^-alpha,
// again with closed-form limits at 0 and infinity.
double tail_g(int k, double d, double c, int u, double alpha) {
  const double delta = 2.0 / alpha;
  if (std::isinf(d)) return 0.0;
  const double lg_ratio = ln_gamma(u + k) - ln_gamma(u);  // ln (U)_k
  const double lfact = ln_gamma(k + 1.0);
  if (d == 0.0)
    return delta * std::exp(ln_gamma(k - delta) - lfact + std::log(c) * delta +
                            ln_gamma(u + delta) - ln_gamma(u));
  const double y = c * std::pow(d, -alpha);
  return delta * std::exp(lg_ratio - lfact) * std::pow(y, k) * d * d /
         (k - delta) * gauss_2f1(k - delta, u + k, k + 1.0 - delta, -y);
}

double column_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

double scenario_qk(const Scenario& scn, int k, double r, double gamma) {
  if (k < 0) throw std::invalid_argument("scenario_qk: negative k");
  const double alpha = scn.alpha;
  const double s = gamma * std::pow(r, alpha) / scn.signal.scale;
  double q = 0.0;
  if (k == 0) q -= s * scn.noise_power;
  if (k == 1) q += s * scn.noise_power;
  for (const auto& cls : scn.interferers) {
    const double c = s * cls.power * cls.gain.scale;
    if (c == 0.0 || cls.density == 0.0) continue;
    const double a = cls.inner(r), b = cls.outer(r);
    if (a < 0.0 || b < a)
      throw std::invalid_argument("scenario_qk: inverted annulus");
    if (a == b) continue;
    if (k == 0)
      q -= kPi * cls.density *
           (tail_t(a, c, cls.gain.shape, alpha) -
            tail_t(b, c, cls.gain.shape, alpha));
    else
      q += kPi * cls.density *
           (tail_g(k, a, c, cls.gain.shape, alpha) -
            tail_g(k, b, c, cls.gain.shape, alpha));
  }
  return q;
}

CoverageResult coverage_theorem1(const Scenario& scn, double gamma,
                                 double abs_tol) {
  validate_scenario(scn);
  if (!(gamma > 0.0))
    throw std::invalid_argument("coverage_theorem1: gamma must be positive");
  const int m = scn.signal.shape;
  const auto provider =
      scn.qk_provider
          ? scn.qk_provider
          : std::function<double(int, double, double)>(
                [&scn](int k, double r, double g) {
                  return scenario_qk(scn, k, r, g);
                });

  CoverageResult out;
  bool negative = false;
  const auto point_coverage = [&](double r) {
    std::vector<double> q(m);
    for (int k = 0; k < m; ++k) q[k] = provider(k, r, gamma);
    const auto col = exp_first_column(q);
    double sum = 0.0;
    for (double x : col) {
      if (x < -1e-12) negative = true;
      sum += x;
    }
    return sum;
  };

  double raw = 0.0;
  if (const auto* fx = std::get_if<FixedServing>(&scn.serving)) {
    raw = point_coverage(fx->r0);
    out.abs_error = 1e-12;
  } else {
    double lambda = 0.0, u_max = 0.0, norm = 1.0;
    if (const auto* np = std::get_if<NearestPointServing>(&scn.serving)) {
      lambda = np->lambda;
      u_max = std::log(10.0 / abs_tol);  // e^{-u} mass beyond is < abs_tol/10
    } else {
      const auto* lb = std::get_if<LosBallServing>(&scn.serving);
      lambda = lb->lambda;
      u_max = kPi * lambda * lb->R * lb->R;
      norm = -std::expm1(-u_max);
    }
    const auto integrand = [&](double u) {
      return std::exp(-u) * point_coverage(std::sqrt(u / (kPi * lambda)));
    };
    const QuadratureResult res = adaptive_quadrature(
        integrand, 0.0, u_max, 0.9 * abs_tol * norm, 0.0, 20000);
    if (!res.converged) {
      std::ostringstream msg;
      msg << "coverage_theorem1: quadrature reached +-" << res.error
          << " against tolerance " << abs_tol;
      throw std::runtime_error(msg.str());
    }
    raw = res.value / norm;
    out.abs_error = res.error / norm + abs_tol / 10.0;
  }

  out.negative_column = negative;
  double clamped = std::min(1.0, std::max(0.0, raw));
  out.clamp_warning = std::abs(clamped - raw) > 1e-6;
  out.value = clamped;
  out.method = Method::analytic;
  return out;
}

double serving_distance_pdf(ServingModelTag model, double lambda_t, double R,
                            double r) {
  if (r < 0.0) throw std::invalid_argument("serving_distance_pdf: r < 0");
  if (!(lambda_t > 0.0) && model != ServingModelTag::fixed)
    throw std::invalid_argument("serving_distance_pdf: lambda <= 0");
  switch (model) {
    case ServingModelTag::nearest_point:
      return 2.0 * kPi * lambda_t * r * std::exp(-kPi * lambda_t * r * r);
    case ServingModelTag::los_ball: {
      if (!(R > 0.0))
        throw std::invalid_argument("serving_distance_pdf: R <= 0");
      if (r > R) return 0.0;
      const double norm = -std::expm1(-kPi * lambda_t * R * R);
      return 2.0 * kPi * lambda_t * r * std::exp(-kPi * lambda_t * r * r) /
             norm;
    }
    case ServingModelTag::fixed:
      throw std::invalid_argument(
          "serving_distance_pdf: fixed-r0 has no density (Dirac)");
  }
  throw std::invalid_argument("serving_distance_pdf: unknown model");
}

double solve_threshold(const std::function<double(double)>& f, double target,
                       double lo, double hi) {
  const RootResult r = brent_solve(
      [&](double x) { return f(x) - target; }, lo, hi, 1e-9, 300);
  if (!r.converged)
    throw std::runtime_error("solve_threshold: iteration budget exhausted");
  return r.root;
}

}  // namespace toepcov
