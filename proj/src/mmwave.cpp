#include "toepcov/mmwave.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "toepcov/quadrature.hpp"
#include "toepcov/specfun.hpp"
#include "toepcov/toeplitz.hpp"

namespace toepcov {
namespace {

void validate(const MmWaveParams& p) {
  if (!(p.lambda_t > 0.0)) throw std::invalid_argument("lambda_t must be positive");
  if (!(p.R > 0.0)) throw std::invalid_argument("R must be positive");
  if (p.Nt < 1) throw std::invalid_argument("Nt must be at least 1");
  if (p.M < 1) throw std::invalid_argument("M must be at least 1");
  if (!(p.alpha > 2.0))
    throw std::domain_error("path-loss exponent must exceed 2");
  if (!(p.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(p.d_over_lambda > 0.0))
    throw std::invalid_argument("d_over_lambda must be positive");
}

// E_u[(1 + a cos^2(pi u/2))^{-M}] over u uniform on [0,1].
double lobe_laplace(int M, double a) { return gauss_2f1(M, 0.5, 1.0, -a); }

// Gamma(M+k)Gamma(k+1/2) / (Gamma(M) sqrt(pi) (k!)^2): the k-th series
// weight combining the Nakagami moment and the in-lobe cosine moment.
double series_weight(int M, int k) {
  return std::exp(ln_gamma(M + k) + ln_gamma(k + 0.5) -
                  ln_gamma(static_cast<double>(M)) - 0.5 * std::log(M_PI) -
                  2.0 * ln_gamma(k + 1.0));
}

}  // namespace

double gain_actual(double phi, int Nt, double d_over_lambda) {
  if (Nt < 1) throw std::invalid_argument("Nt must be at least 1");
  if (Nt == 1) return 1.0;
  const double x = M_PI * d_over_lambda * phi;
  const double den = std::sin(x);
  if (std::fabs(den) < 1e-12) return 1.0;  // removable singularity
  const double num = std::sin(Nt * x);
  const double g = (num * num) / (static_cast<double>(Nt) * Nt * den * den);
  return std::fmin(g, 1.0);
}

double gain_cosine(double phi, int Nt) {
  if (Nt < 1) throw std::invalid_argument("Nt must be at least 1");
  if (std::fabs(phi) > 1.0 / Nt) return 0.0;
  const double c = std::cos(0.5 * M_PI * Nt * phi);
  return c * c;
}

double mmwave_J(int k, double x, int M, double delta) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (x > 0.0) throw std::invalid_argument("x must be non-positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::domain_error("delta must lie in (0,1)");
  return hyp_3f2(k + 0.5, k - delta, k + M, k + 1.0, k + 1.0 - delta, x);
}

double mmwave_y(int k, double x, double lambda_t, double R, int M,
                double delta) {
  const double c = M_PI * lambda_t * R * R;
  double v = mmwave_J(k, x, M, delta) * (1.0 - std::exp(-c) * (1.0 + c));
  if (k == 0) v += c - 1.0 + std::exp(-c);
  return v;
}

double mmwave_qhat_r(int k, double r, const MmWaveParams& p) {
  validate(p);
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (!(r >= 0.0 && r <= p.R)) throw std::invalid_argument("r outside [0,R]");
  if (r == p.R || r == 0.0) return 0.0;  // empty annulus / vanishing r^2

  // Substituting x = (r/v)^alpha maps the interferer integral onto (x0, 1]
  // with a mild power singularity at 0, uniformly in r.
  const double delta = 2.0 / p.alpha;
  const double x0 = std::pow(r / p.R, p.alpha);
  const double scale = M_PI * p.lambda_t * delta * r * r;

  if (k == 0) {
    const auto q = adaptive_quadrature(
        [&](double x) {
          return std::pow(x, -delta - 1.0) *
                 (1.0 - lobe_laplace(p.M, p.gamma * x));
        },
        x0, 1.0, 1e-10, 1e-10, 20000);
    if (!q.converged)
      throw std::runtime_error("mmwave exponent quadrature failed");
    return -scale * q.value;
  }

  const double weight = series_weight(p.M, k);
  const auto q = adaptive_quadrature(
      [&](double x) {
        return std::pow(x, k - delta - 1.0) *
               gauss_2f1(p.M + k, k + 0.5, k + 1.0, -p.gamma * x);
      },
      x0, 1.0, 1e-10, 1e-10, 20000);
  if (!q.converged)
    throw std::runtime_error("mmwave exponent quadrature failed");
  return scale * weight * std::pow(p.gamma, k) * q.value;
}

double mmwave_qhat(int k, const MmWaveParams& p) {
  validate(p);
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const double delta = 2.0 / p.alpha;
  const double cell = M_PI * p.lambda_t * p.R * p.R;

  if (k == 0) {
    // Averaged Laplace exponent: substituting x = (r/v)^alpha collapses the
    // serving-distance and interferer integrals into one dimension, with
    // gamma2(y) = 1 - e^{-y}(1+y) the nested radial mass.
    const auto q = adaptive_quadrature(
        [&](double x) {
          const double y = cell * std::pow(x, delta);
          const double gamma2 = 1.0 - std::exp(-y) * (1.0 + y);
          return std::pow(x, -delta - 1.0) *
                 (1.0 - lobe_laplace(p.M, p.gamma * x)) * gamma2;
        },
        0.0, 1.0, 1e-10, 1e-10, 20000);
    if (!q.converged)
      throw std::runtime_error("mmwave exponent quadrature failed");
    return -delta * q.value;
  }

  const double pref = 2.0 * series_weight(p.M, k) * std::pow(p.gamma, k) /
                      (p.alpha * k - 2.0);
  // w = pi*lambda*u substitution keeps the integrand O(1); the (pi l)^2
  // R^{2-alpha k} weight folds into cell^{1 - alpha k/2}.
  const auto inner = adaptive_quadrature(
      [&](double w) {
        const double x = -p.gamma * std::pow(w / cell, 0.5 * p.alpha);
        return std::exp(-w) * std::pow(w, 0.5 * p.alpha * k) *
               mmwave_J(k, x, p.M, delta);
      },
      0.0, cell, 1e-8, 0.0, 20000);
  if (!inner.converged)
    throw std::runtime_error("mmwave exponent quadrature failed");
  const double bracket = mmwave_y(k, -p.gamma, p.lambda_t, p.R, p.M, delta) -
                         std::pow(cell, 1.0 - 0.5 * p.alpha * k) * inner.value;
  return pref * bracket;
}

CoverageResult mmwave_coverage_lb(const MmWaveParams& p) {
  validate(p);
  const double cell = M_PI * p.lambda_t * p.R * p.R;
  const double los = -std::expm1(-cell);
  const double t = 1.0 / p.Nt;

  std::vector<double> qhat(p.M);
  for (int k = 0; k < p.M; ++k) qhat[k] = mmwave_qhat(k, p);

  double poly = 1.0;
  double factorial = 1.0;
  for (int n = 1; n < p.M; ++n) {
    factorial *= n;
    poly += nilpotent_power_l1(qhat, n) / (factorial * los) * std::pow(t, n);
  }
  const double b0 = qhat[0] / los;

  CoverageResult res;
  res.method = Method::bound_lower;
  const double raw = los * std::exp(b0 * t) * poly;
  res.value = std::fmin(std::fmax(raw, 0.0), 1.0);
  res.clamp_warning = std::fabs(raw - res.value) > 1e-6;
  return res;
}

CoverageResult mmwave_coverage_exact(const MmWaveParams& p, double abs_tol) {
  validate(p);
  Scenario scn;
  scn.signal = GammaGain{p.M, 1.0 / p.M};
  scn.alpha = p.alpha;
  scn.serving = LosBallServing{p.lambda_t, p.R};
  const double t = 1.0 / p.Nt;
  scn.qk_provider = [p, t](int k, double r, double gamma) {
    MmWaveParams q = p;
    q.gamma = gamma;
    return t * mmwave_qhat_r(k, std::fmin(r, p.R), q);
  };
  CoverageResult res = coverage_theorem1(scn, p.gamma, abs_tol);
  // coverage_theorem1 conditions on a serving BS inside the LOS ball.
  res.value *= -std::expm1(-M_PI * p.lambda_t * p.R * p.R);
  return res;
}

}  // namespace toepcov
