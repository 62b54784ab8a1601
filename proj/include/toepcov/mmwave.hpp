#pragma once

#include "toepcov/framework.hpp"

namespace toepcov {

// LOS-ball cellular downlink with analog beamforming: Nakagami(M) fading,
// uniformly random interferer beam offsets, nearest-BS association within
// the LOS radius R.
struct MmWaveParams {
  double lambda_t = 1e-3;     // BS density (m^-2)
  double R = 200.0;           // LOS radius (m)
  int Nt = 4;                 // array size
  int M = 3;                  // Nakagami parameter
  double alpha = 2.1;         // LOS path-loss exponent
  double gamma = 3.16227766016837952;  // SINR threshold (linear), 5 dB
  double d_over_lambda = 0.5; // antenna spacing in wavelengths
};

// Fejer-kernel array pattern sin^2(Nt pi (d/l) phi) / (Nt^2 sin^2(pi (d/l)
// phi)); the removable singularities (denominator zeros) evaluate to 1.
double gain_actual(double phi, int Nt, double d_over_lambda = 0.5);

// Cosine approximation: cos^2(pi Nt phi / 2) on the main lobe |phi| <=
// 1/Nt, zero outside.
double gain_cosine(double phi, int Nt);

// J_k(x) = 3F2(k+1/2, k-delta, k+M; k+1, k+1-delta; x), x <= 0.
double mmwave_J(int k, double x, int M, double delta);

// y_k(x) = J_k(x)[1 - e^{-pi l R^2}(1 + pi l R^2)]
//          + 1(k=0)(pi l R^2 - 1 + e^{-pi l R^2}).
double mmwave_y(int k, double x, double lambda_t, double R, int M,
                double delta);

// Per-array-size coefficient of the exponent entry: the column of the
// coverage exponent is t * qhat_k with t = 1/Nt.  k = 0 evaluates the full
// averaged Laplace exponent by quadrature; k >= 1 uses the closed bracket
// with y_k and an inner integral at 1e-8 absolute tolerance.
double mmwave_qhat(int k, const MmWaveParams& p);

// Same coefficient before averaging over the serving distance r.
double mmwave_qhat_r(int k, double r, const MmWaveParams& p);

// Exponential-polynomial lower bound (1-e^{-pi l R^2}) e^{b0 t} (1 + sum b_n t^n),
// non-decreasing and concave in Nt; method = bound_lower.
CoverageResult mmwave_coverage_lb(const MmWaveParams& p);

// Unconditional coverage under the cosine pattern via the serving-distance
// integral of the per-r exponential column (no bounding step).
CoverageResult mmwave_coverage_exact(const MmWaveParams& p,
                                     double abs_tol = 1e-6);

}  // namespace toepcov
