#include "mc_kernels.hpp"

#include <cmath>

namespace toepcov::kern {

void neg_log(const double* u, double* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = -std::log(u[i]);
}

void add_neg_log(const double* u, double* out, int n) {
  for (int i = 0; i < n; ++i) out[i] -= std::log(u[i]);
}

double weighted_affine_pow_sum(const double* u, const double* g, int n,
                               double a, double b, double half_alpha) {
  double acc = 0.0;
  if (half_alpha == 2.0) {
    for (int i = 0; i < n; ++i) {
      const double r2 = a + b * u[i];
      acc += g[i] / (r2 * r2);
    }
  } else {
    for (int i = 0; i < n; ++i)
      acc += g[i] * std::pow(a + b * u[i], -half_alpha);
  }
  return acc;
}

}  // namespace toepcov::kern
