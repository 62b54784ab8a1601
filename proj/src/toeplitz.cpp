#include "toepcov/toeplitz.hpp"

#include <cmath>
#include <stdexcept>

namespace toepcov {

namespace {

void require_nonempty(const std::vector<double>& q) {
  if (q.empty())
    throw std::invalid_argument("toeplitz: first column must be non-empty");
}

}  // namespace

std::vector<double> exp_first_column(const std::vector<double>& q) {
  require_nonempty(q);
  const std::size_t m = q.size();
  std::vector<double> x(m);
  x[0] = std::exp(q[0]);
  if (!std::isfinite(x[0]))
    throw std::range_error("exp_first_column: overflow");
  for (std::size_t n = 1; n < m; ++n) {
    // Extended-precision accumulation keeps the absolute error near one ulp
    // of the result even for columns that grow to ~1e6.
    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i)
      acc += static_cast<long double>(n - i) * q[n - i] * x[i];
    x[n] = static_cast<double>(acc / static_cast<long double>(n));
    if (!std::isfinite(x[n]))
      throw std::range_error("exp_first_column: overflow");
  }
  return x;
}

double l1_exp(const std::vector<double>& q) {
  double sum = 0.0;
  for (double v : exp_first_column(q)) sum += v;
  return sum;
}

std::vector<double> inv_first_column(const std::vector<double>& q) {
  require_nonempty(q);
  if (q[0] == 0.0)
    throw std::domain_error("inv_first_column: singular matrix (q0 = 0)");
  const std::size_t m = q.size();
  std::vector<double> y(m);
  y[0] = 1.0 / q[0];
  for (std::size_t n = 1; n < m; ++n) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i)
      acc += static_cast<long double>(q[n - i]) * y[i];
    y[n] = static_cast<double>(-acc / q[0]);
  }
  return y;
}

double nilpotent_power_l1(const std::vector<double>& q, int n) {
  require_nonempty(q);
  if (n < 0) throw std::invalid_argument("nilpotent_power_l1: negative power");
  const std::size_t m = q.size();
  if (n == 0) return 1.0;
  if (static_cast<std::size_t>(n) >= m) return 0.0;
  // Column of N^j by repeated convolution with (0, q_1, ..., q_{M-1}),
  // truncated at M (entries beyond the matrix fall off the column).
  std::vector<double> col(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) col[i] = q[i];
  std::vector<double> next(m);
  for (int j = 1; j < n; ++j) {
    next.assign(m, 0.0);
    for (std::size_t i = 1; i < m; ++i)
      for (std::size_t k = 0; k + i < m; ++k) next[k + i] += q[i] * col[k];
    col.swap(next);
  }
  double sum = 0.0;
  for (double v : col) sum += v;
  return sum;
}

}  // namespace toepcov
