#pragma once

#include <functional>

namespace toepcov {

struct RootResult {
  double root = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Brent's method on a bracket [lo, hi] with f(lo), f(hi) of opposite sign
// (or zero at an endpoint).  Throws std::invalid_argument on a bad bracket.
RootResult brent_solve(const std::function<double(double)>& f, double lo,
                       double hi, double rel_tol = 1e-9, int max_iter = 200);

}
