#pragma once

#include <functional>

namespace toepcov {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod (G7,K15).  Repeatedly splits the subinterval with
// the largest error estimate until the accumulated estimate satisfies
// max(abs_tol, rel_tol*|I|) or the interval budget is exhausted
// (converged=false then; the best estimate is still returned).
//
// b may be +infinity for integrands with decaying tails: the upper limit is
// truncated where the estimated remaining mass |f(T)|*T drops below
// abs_tol/10 (throws std::runtime_error if no such T is found).
QuadratureResult adaptive_quadrature(const std::function<double(double)>& f,
                                     double a, double b,
                                     double abs_tol = 1e-9,
                                     double rel_tol = 1e-9,
                                     int max_intervals = 4000);

}
