#include "toepcov/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "toepcov/quadrature.hpp"

namespace toepcov {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kSeriesEps = 1e-16;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

// Direct Gauss series; valid for |z| < 1 and for terminating parameters.
// Stops once three consecutive terms are below 1e-16 of the partial sum.
double series_2f1(double a, double b, double c, double z) {
  double term = 1.0, sum = 1.0;
  int quiet = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (1.0 + n)) * z;
    sum += term;
    if (term == 0.0) return sum;  // terminating polynomial
    if (std::abs(term) < kSeriesEps * std::abs(sum)) {
      if (++quiet >= 3) return sum;
    } else {
      quiet = 0;
    }
  }
  throw std::runtime_error("gauss_2f1: series did not converge");
}

// Pfaff transform for z < 0: argument w = z/(z-1) lies in (0,1).  Of the two
// equivalent forms, prefer the one whose series parameters are least negative
// to limit cancellation.
double pfaff_2f1(double a, double b, double c, double z) {
  const double w = z / (z - 1.0);
  if (std::min(c - a, b) > std::min(a, c - b))
    return std::pow(1.0 - z, -b) * series_2f1(c - a, b, c, w);
  return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, w);
}

// Connection formula at -infinity (requires b-a non-integer): the two series
// run in 1/z, and each coefficient Gamma ratio is evaluated with signed
// log-gammas since several arguments are negative in our use.
double infinity_2f1(double a, double b, double c, double z) {
  const double x = 1.0 / z;
  int sgn;
  double coef_log;
  double total = 0.0;

  int sc;
  const double lg_c = lgamma_signed(c, sc);

  if (!is_nonpositive_integer(b) && !is_nonpositive_integer(c - a)) {
    int s1, s2, s3;
    coef_log = lg_c + lgamma_signed(b - a, s1) - lgamma_signed(b, s2) -
               lgamma_signed(c - a, s3);
    sgn = sc * s1 * s2 * s3;
    total += sgn * std::exp(coef_log - a * std::log(-z)) *
             series_2f1(a, a - c + 1.0, a - b + 1.0, x);
  }
  if (!is_nonpositive_integer(a) && !is_nonpositive_integer(c - b)) {
    int s1, s2, s3;
    coef_log = lg_c + lgamma_signed(a - b, s1) - lgamma_signed(a, s2) -
               lgamma_signed(c - b, s3);
    sgn = sc * s1 * s2 * s3;
    total += sgn * std::exp(coef_log - b * std::log(-z)) *
             series_2f1(b, b - c + 1.0, b - a + 1.0, x);
  }
  return total;
}

double series_3f2(double a1, double a2, double a3, double b1, double b2,
                  double z) {
  double term = 1.0, sum = 1.0;
  int quiet = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    term *= (a1 + n) * (a2 + n) * (a3 + n) /
            ((b1 + n) * (b2 + n) * (1.0 + n)) * z;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) < kSeriesEps * std::abs(sum)) {
      if (++quiet >= 3) return sum;
    } else {
      quiet = 0;
    }
  }
  throw std::runtime_error("hyp_3f2: series did not converge");
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma: requires x > 0");
  return std::lgamma(x);
}

double lgamma_signed(double x, int& sign) {
  if (x > 0.0) {
    sign = 1;
    return std::lgamma(x);
  }
  if (x == std::floor(x))
    throw std::domain_error("lgamma_signed: pole at non-positive integer");
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
  const double s = std::sin(std::numbers::pi * x);
  sign = (s > 0.0) ? 1 : -1;
  return std::log(std::numbers::pi / std::abs(s)) - std::lgamma(1.0 - x);
}

double gauss_2f1(double a, double b, double c, double z) {
  if (!(z < 1.0)) throw std::domain_error("gauss_2f1: requires z < 1");
  if (is_nonpositive_integer(c))
    throw std::domain_error("gauss_2f1: c is a non-positive integer");
  if (z == 0.0) return 1.0;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
    return series_2f1(a, b, c, z);  // exact terminating sum
  if (z > 0.0) return series_2f1(a, b, c, z);
  if (z >= -20.0) return pfaff_2f1(a, b, c, z);
  if (near_integer(b - a)) {
    // Degenerate connection formula; the Euler transform rescues the cases
    // where it produces a terminating series.
    if (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b))
      return std::pow(1.0 - z, c - a - b) * series_2f1(c - a, c - b, c, z);
    throw std::runtime_error(
        "gauss_2f1: b-a integral and non-terminating at large |z|");
  }
  return infinity_2f1(a, b, c, z);
}

double hyp_3f2(double a1, double a2, double a3, double b1, double b2,
               double z) {
  if (!(z < 1.0)) throw std::domain_error("hyp_3f2: requires z < 1");
  if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2))
    throw std::domain_error("hyp_3f2: lower parameter is a non-positive integer");
  if (z == 0.0) return 1.0;
  if (is_nonpositive_integer(a1) || is_nonpositive_integer(a2) ||
      is_nonpositive_integer(a3) || std::abs(z) < 0.75)
    return series_3f2(a1, a2, a3, b1, b2, z);

  // Euler-type integral: absorb an upper parameter into a lower one,
  //   3F2 = B(a,b-a)^{-1} Int_0^1 t^{a-1}(1-t)^{b-a-1} 2F1(p,q;r;zt) dt,
  // picking the admissible pair (b > a > 0) that keeps both weight exponents
  // largest (t = sin^2 theta makes the integrand smooth when both are >= 1/2).
  const double up[3] = {a1, a2, a3};
  const double lo[2] = {b1, b2};
  int bi = -1, bj = -1;
  double best = -1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j)
      if (up[i] > 0.0 && lo[j] - up[i] > 0.0) {
        const double score = std::min(up[i], lo[j] - up[i]);
        if (score > best) {
          best = score;
          bi = i;
          bj = j;
        }
      }
  if (bi < 0)
    throw std::runtime_error("hyp_3f2: no admissible integral pairing");
  const double aa = up[bi], bb = lo[bj];
  const double p = up[(bi + 1) % 3], q = up[(bi + 2) % 3];
  const double r = lo[1 - bj];
  const double ps = 2.0 * aa - 1.0, pc = 2.0 * (bb - aa) - 1.0;
  const double norm =
      std::exp(ln_gamma(bb) - ln_gamma(aa) - ln_gamma(bb - aa)) * 2.0;
  const auto f = [&](double th) {
    const double st = std::sin(th), ct = std::cos(th);
    return std::pow(st, ps) * std::pow(ct, pc) *
           gauss_2f1(p, q, r, z * st * st);
  };
  const QuadratureResult res = adaptive_quadrature(
      f, 0.0, 0.5 * std::numbers::pi, 1e-13, 1e-11, 8000);
  if (!res.converged)
    throw std::runtime_error("hyp_3f2: integral did not converge");
  return norm * res.value;
}

double reg_lower_inc_gamma(double m, double x) {
  if (!(m > 0.0))
    throw std::domain_error("reg_lower_inc_gamma: requires m > 0");
  if (x < 0.0) throw std::domain_error("reg_lower_inc_gamma: requires x >= 0");
  if (x == 0.0) return 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double lgm = std::lgamma(m);
  if (x < m + 1.0) {
    // Lower series.
    double ap = m, del = 1.0 / m, sum = del;
    for (int n = 0; n < kMaxTerms; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * eps)
        return sum * std::exp(-x + m * std::log(x) - lgm);
    }
    throw std::runtime_error("reg_lower_inc_gamma: series did not converge");
  }
  // Upper continued fraction (modified Lentz).
  constexpr double fpmin = 1e-300;
  double b = x + 1.0 - m, c = 1.0 / fpmin, d = 1.0 / b, h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -static_cast<double>(i) * (i - m);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps)
      return 1.0 - std::exp(-x + m * std::log(x) - lgm) * h;
  }
  throw std::runtime_error(
      "reg_lower_inc_gamma: continued fraction did not converge");
}

}  // namespace toepcov
