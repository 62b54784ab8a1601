#pragma once

// Bulk per-interferer arithmetic for the simulation loops.  Compiled in its
// own translation unit with fast-math and target tuning; the analytic code
// never includes these symbols.

namespace toepcov::kern {

// out[i] = -log(u[i])
void neg_log(const double* u, double* out, int n);

// out[i] += -log(u[i])  (stacks integer-shape gamma gains)
void add_neg_log(const double* u, double* out, int n);

// sum_i g[i] * (a + b*u[i])^(-half_alpha); the affine map takes uniforms to
// squared radii on an annulus.
double weighted_affine_pow_sum(const double* u, const double* g, int n,
                               double a, double b, double half_alpha);

}  // namespace toepcov::kern
