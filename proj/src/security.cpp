#include "toepcov/security.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "toepcov/framework.hpp"
#include "toepcov/specfun.hpp"
#include "toepcov/toeplitz.hpp"

namespace toepcov {
namespace {

void validate(const SecurityParams& p) {
  if (!(p.lambda_t > 0.0)) throw std::invalid_argument("lambda_t must be positive");
  if (p.lambda_e < 0.0) throw std::invalid_argument("lambda_e must be non-negative");
  if (p.Nt < 1) throw std::invalid_argument("Nt must be at least 1");
  if (!(p.r0 > 0.0)) throw std::invalid_argument("r0 must be positive");
  if (p.d0 < 0.0) throw std::invalid_argument("d0 must be non-negative");
  if (!(p.alpha > 2.0))
    throw std::domain_error("path-loss exponent must exceed 2");
}

// Gamma(n+k) / (Gamma(n) Gamma(k+1)) for small non-negative integers.
double binom_poch(int n, int k) {
  double v = 1.0;
  for (int j = 0; j < k; ++j) v *= static_cast<double>(n + j) / (j + 1);
  return v;
}

// Residual-stream pmf for all n = 1..Nt at coordination range d0.
std::vector<double> stream_pmf(const SecurityParams& p) {
  std::vector<double> pmf(p.Nt + 1, 0.0);
  if (p.Nt == 1) {
    pmf[1] = 1.0;
    return pmf;
  }
  const double mean = M_PI * p.d0 * p.d0 * p.lambda_t;
  double tail = 0.0;
  // n = Nt - j streams survive j requests, j = Nt - n < Nt - 1 all granted.
  for (int n = p.Nt; n >= 2; --n) {
    const int j = p.Nt - n;
    double lp = -mean;
    for (int i = 1; i <= j; ++i) lp += std::log(mean) - std::log(i);
    pmf[n] = (mean == 0.0 && j > 0) ? 0.0 : std::exp(lp);
    tail += pmf[n];
  }
  pmf[1] = std::max(0.0, 1.0 - tail);  // overload: Nt-1 of K >= Nt-1 granted
  return pmf;
}

// Full-plane (d0 = 0) exponent column for signal shape U and c = gamma r0^a:
// q0 = -pi*l*Gamma(1-d)*(U)_d*c^d, qk = +pi*l*d*Gamma(k-d)*c^d*(U)_d/k!.
std::vector<double> no_nulling_column(const SecurityParams& p,
                                      double gamma_l) {
  const double delta = 2.0 / p.alpha;
  const int U = p.Nt;
  const double c = gamma_l * std::pow(p.r0, p.alpha);
  const double poch =
      std::exp(ln_gamma(U + delta) - ln_gamma(static_cast<double>(U)));
  const double cd = std::pow(c, delta);
  std::vector<double> col(U, 0.0);
  col[0] = -M_PI * p.lambda_t * std::exp(ln_gamma(1.0 - delta)) * poch * cd;
  double kfact = 1.0;
  for (int k = 1; k < U; ++k) {
    kfact *= k;
    col[k] = M_PI * p.lambda_t * delta * std::exp(ln_gamma(k - delta)) * cd *
             poch / kfact;
  }
  return col;
}

double qk_impl(int k, int nx0, const SecurityParams& p, double gamma_l,
               const std::vector<double>& pmf) {
  const double delta = 2.0 / p.alpha;
  const double base = std::pow(p.r0 / p.d0, p.alpha) * gamma_l * nx0;
  double sum = 0.0;
  for (int n = 1; n <= p.Nt; ++n) {
    if (pmf[n] == 0.0) continue;
    const double x = base / n;
    const double front =
        (k == 0) ? 1.0 : binom_poch(n, k) * (delta / (delta - k)) *
                             std::pow(x, k);
    sum += pmf[n] * front *
           gauss_2f1(k - delta, k + n, k + 1 - delta, -x);
  }
  return sum;
}

}  // namespace

double p_requests(int n, const SecurityParams& p) {
  validate(p);
  if (n < 1 || n > p.Nt) return 0.0;
  return stream_pmf(p)[n];
}

double security_qk(int k, int nx0, const SecurityParams& p, double gamma_l) {
  validate(p);
  if (!(p.d0 > 0.0)) throw std::invalid_argument("security_qk needs d0 > 0");
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (nx0 < 1 || nx0 > p.Nt)
    throw std::invalid_argument("nx0 out of range");
  if (!(gamma_l > 0.0)) throw std::invalid_argument("gamma_l must be positive");
  return qk_impl(k, nx0, p, gamma_l, stream_pmf(p));
}

double connection_outage(const SecurityParams& p, double gamma_l) {
  validate(p);
  if (gamma_l < 0.0) throw std::invalid_argument("gamma_l must be non-negative");
  if (gamma_l == 0.0) return 0.0;

  if (p.d0 == 0.0) {
    const double cov = l1_exp(no_nulling_column(p, gamma_l));
    return std::clamp(1.0 - cov, 0.0, 1.0);
  }

  const std::vector<double> pmf = stream_pmf(p);
  const double scale = M_PI * p.lambda_t * p.d0 * p.d0;
  double cov = 0.0;
  for (int n0 = 1; n0 <= p.Nt; ++n0) {
    if (pmf[n0] == 0.0) continue;
    std::vector<double> col(n0);
    col[0] = -scale * (qk_impl(0, n0, p, gamma_l, pmf) - 1.0);
    for (int k = 1; k < n0; ++k)
      col[k] = -scale * qk_impl(k, n0, p, gamma_l, pmf);
    cov += pmf[n0] * l1_exp(col);
  }
  return std::clamp(1.0 - cov, 0.0, 1.0);
}

double secrecy_outage_ub(const SecurityParams& p, double gamma_e) {
  validate(p);
  if (!(gamma_e > 0.0)) throw std::invalid_argument("gamma_e must be positive");
  const double delta = 2.0 / p.alpha;
  if (p.lambda_e == 0.0) return 0.0;

  const std::vector<double> pmf = stream_pmf(p);
  // Mean delta-moment of the per-stream interference marks h/n.
  double c_mix = 0.0;
  for (int n = 1; n <= p.Nt; ++n) {
    if (pmf[n] == 0.0) continue;
    c_mix += pmf[n] *
             std::exp(ln_gamma(n + delta) - ln_gamma(static_cast<double>(n)) -
                      delta * std::log(static_cast<double>(n)));
  }
  const double denom = std::exp(ln_gamma(1.0 - delta)) * c_mix;

  double out = 0.0;
  for (int n0 = 1; n0 <= p.Nt; ++n0) {
    if (pmf[n0] == 0.0) continue;
    const double a = (p.lambda_e / p.lambda_t) *
                     std::pow(1.0 + gamma_e, 1.0 - n0) *
                     std::pow(gamma_e * n0, -delta) / denom;
    out += pmf[n0] * (-std::expm1(-a));
  }
  return std::clamp(out, 0.0, 1.0);
}

SecrecyCapacityResult secrecy_capacity(const SecurityParams& p, double d0,
                                       double mu, double eps) {
  SecurityParams q = p;
  q.d0 = d0;
  validate(q);
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("mu must lie in (0,1)");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("eps must lie in (0,1)");

  SecrecyCapacityResult res;

  double hi = 1.0;
  while (connection_outage(q, hi) < mu && hi < 1e15) hi *= 4.0;
  res.gamma_l_th = solve_threshold(
      [&](double g) { return connection_outage(q, g); }, mu, 1e-14, hi);

  const double floor_g = 1e-12;
  if (q.lambda_e == 0.0 || secrecy_outage_ub(q, floor_g) <= eps) {
    res.gamma_e_th = floor_g;
  } else {
    double ghi = 1.0;
    while (secrecy_outage_ub(q, ghi) > eps && ghi < 1e18) ghi *= 4.0;
    if (secrecy_outage_ub(q, ghi) > eps) {
      res.feasible = false;
      res.capacity = 0.0;
      res.gamma_e_th = std::numeric_limits<double>::infinity();
      return res;
    }
    res.gamma_e_th = solve_threshold(
        [&](double g) { return secrecy_outage_ub(q, g); }, eps, floor_g, ghi);
  }

  const double rate =
      std::log2((1.0 + res.gamma_l_th) / (1.0 + res.gamma_e_th));
  res.capacity = (1.0 - mu) * q.lambda_t * std::max(0.0, rate);
  return res;
}

D0Optimum optimize_d0(const SecurityParams& p, double mu, double eps,
                      const std::vector<double>& grid) {
  if (grid.size() < 2) throw std::invalid_argument("d0 grid needs >= 2 points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("d0 grid must be strictly increasing");

  auto cs = [&](double d0) { return secrecy_capacity(p, d0, mu, eps).capacity; };

  std::size_t best = 0;
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    vals[i] = cs(grid[i]);
    if (vals[i] > vals[best]) best = i;  // strict: ties keep the smaller d0
  }

  double lo = grid[best > 0 ? best - 1 : 0];
  double hi = grid[std::min(best + 1, grid.size() - 1)];
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = cs(x1), f2 = cs(x2);
  for (int it = 0; it < 60 && (b - a) > 1e-6 * std::max(1.0, b); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = cs(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = cs(x1);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fmid = cs(mid);

  D0Optimum opt{grid[best], vals[best]};
  if (fmid > opt.capacity) {
    opt.d0 = mid;
    opt.capacity = fmid;
  }
  return opt;
}

}  // namespace toepcov
