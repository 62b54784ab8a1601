#include "toepcov/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace toepcov {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

void RandomStream::reseed(std::uint64_t seed, std::uint64_t trial) {
  // Avalanche the trial index before mixing so that consecutive trials do
  // not land on correlated splitmix64 walks.
  std::uint64_t t = trial;
  std::uint64_t x = seed ^ splitmix64(t);
  for (int i = 0; i < 4; ++i) s_[i] = splitmix64(x);
}

double RandomStream::exp1() { return -std::log(uniform_pos()); }

double RandomStream::normal() {
  // Marsaglia polar without caching: trial partitioning stays stateless.
  for (;;) {
    double u = 2.0 * uniform() - 1.0;
    double v = 2.0 * uniform() - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double RandomStream::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("gamma shape and scale must be positive");
  if (shape < 1.0) {
    double u = uniform_pos();
    return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  double n = std::nearbyint(shape);
  if (n == shape && n <= 8.0) {
    double sum = 0.0;
    for (int i = 0; i < static_cast<int>(n); ++i) sum += exp1();
    return scale * sum;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_pos();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
      return scale * d * v;
  }
}

long long RandomStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    const double limit = std::exp(-mean);
    long long k = 0;
    double prod = uniform_pos();
    while (prod > limit) {
      ++k;
      prod *= uniform_pos();
    }
    return k;
  }
  // PTRD (Hormann, transformed rejection with squeeze).
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_sqrt_2pi = 0.91893853320467274178;
  for (;;) {
    double u, v = uniform();
    if (v <= 0.86 * v_r) {
      u = v / v_r - 0.43;
      return static_cast<long long>(
          std::floor((2.0 * a / (0.5 - std::fabs(u)) + b) * u + mean + 0.445));
    }
    if (v >= v_r) {
      u = uniform() - 0.5;
    } else {
      u = v / v_r - 0.93;
      u = (u < 0.0 ? -0.5 : 0.5) - u;
      v = uniform() * v_r;
    }
    const double us = 0.5 - std::fabs(u);
    if (us < 0.013 && v > us) continue;
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.445);
    if (kf < 0.0) continue;
    v = v * inv_alpha / (a / (us * us) + b);
    if (kf >= 10.0) {
      const double ik = 1.0 / kf;
      if (std::log(v * smu) <=
          (kf + 0.5) * std::log(mean * ik) - mean - log_sqrt_2pi + kf -
              (1.0 / 12.0 - ik * ik / 360.0) * ik)
        return static_cast<long long>(kf);
    } else {
      if (std::log(v) <=
          kf * std::log(mean) - mean - std::lgamma(kf + 1.0))
        return static_cast<long long>(kf);
    }
  }
}

}  // namespace toepcov
