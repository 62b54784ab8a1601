#pragma once

#include <vector>

#include "toepcov/framework.hpp"

namespace toepcov {

// One tier of a K-tier downlink: BS density, transmit power, association
// bias, antenna count and number of users served by spatial multiplexing.
struct TierParams {
  double lambda = 1.0;
  double P = 1.0;
  double B = 1.0;
  int Mant = 1;
  int U = 1;
};

// Off-diagonal entry (i >= 1) of the per-tier coverage matrix for serving
// tier k:
//   (P_k B_k)^{-delta} sum_j lambda_j (P_j B_j)^delta
//     * [Gamma(U_j+i)/(Gamma(U_j) Gamma(i+1))] * [delta/(i-delta)]
//     * y_j^i * 2F1(i-delta, U_j+i; i+1-delta; -y_j),
// with y_j = U_k B_k gamma / (U_j B_j).
double hetnet_qki(const std::vector<TierParams>& tiers, int k, int i,
                  double gamma, double alpha);

// Diagonal completion (the same display evaluated at i = 0, where
// delta/(i-delta) = -1); strictly negative, and it is what normalizes the
// per-tier association weight inside the inverse-column sum.
double hetnet_qk0(const std::vector<TierParams>& tiers, int k, double gamma,
                  double alpha);

// Per-tier contributions: column sum of the inverse of the
// (Mant_k - U_k + 1)-sized Toeplitz matrix with first column
// (-c_0/lambda_k, ..., -c_{M-U}/lambda_k).  Each lies in [0,1].
std::vector<double> hetnet_tier_terms(const std::vector<TierParams>& tiers,
                                      double gamma, double alpha);

// Closed-form coverage: sum of the tier terms.  Interference-limited only.
CoverageResult hetnet_coverage(const std::vector<TierParams>& tiers,
                               double gamma, double alpha);

// Numerical route through coverage_theorem1: per-tier quadrature over the
// association-conditioned serving distance.  Accepts noise.
CoverageResult hetnet_coverage_theorem1(const std::vector<TierParams>& tiers,
                                        double gamma, double alpha,
                                        double noise_power = 0.0,
                                        double abs_tol = 1e-7);

}  // namespace toepcov
