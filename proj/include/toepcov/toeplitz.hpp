#pragma once

#include <vector>

namespace toepcov {

// All functions below act on a lower-triangular Toeplitz matrix Q given by
// its first column q (q[0] is the diagonal).  The full matrix is never
// materialized.

// First column of exp{Q}:
//   x_0 = e^{q_0},  x_n = sum_{i<n} ((n-i)/n) q_{n-i} x_i.
// Throws std::range_error on overflow, std::invalid_argument if q is empty.
std::vector<double> exp_first_column(const std::vector<double>& q);

// Column sum of exp_first_column(q).
double l1_exp(const std::vector<double>& q);

// First column of Q^{-1} by forward substitution.  Throws std::domain_error
// when q[0] == 0 (singular).
std::vector<double> inv_first_column(const std::vector<double>& q);

// Column sum of (Q - q_0 I)^n.  The shifted matrix is nilpotent: n >= M
// returns exactly 0, n = 0 returns 1.
double nilpotent_power_l1(const std::vector<double>& q, int n);

}
