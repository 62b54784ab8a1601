#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "toepcov/framework.hpp"
#include "toepcov/quadrature.hpp"
#include "toepcov/security.hpp"
#include "toepcov/specfun.hpp"

using namespace toepcov;

namespace {

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

double poch_over_fact(int n, int k) {
  double v = 1.0;
  for (int j = 0; j < k; ++j) v *= static_cast<double>(n + j) / (j + 1);
  return v;
}

// Exponent entry rebuilt from the defining interference integral: per
// residual-stream count n the marks are Gamma(n, 1) at power 1/n, so
//   q_k = -(2/d0^2) sum_n p_N(n) (n)_k/k! Int_{d0}^inf (c_n v^-a)^k
//         (1 + c_n v^-a)^{-n-k} v dv          (k >= 1),
//   q_0 = 1 + (2/d0^2) sum_n p_N(n) Int_{d0}^inf (1-(1+c_n v^-a)^{-n}) v dv,
// with c_n = gamma_l r0^a nx0 / n.
double qk_oracle(int k, int nx0, const SecurityParams& p, double gamma_l) {
  const double inf = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (int n = 1; n <= p.Nt; ++n) {
    const double pn = p_requests(n, p);
    if (pn == 0.0) continue;
    const double c = gamma_l * std::pow(p.r0, p.alpha) * nx0 / n;
    std::function<double(double)> f;
    if (k == 0) {
      f = [=](double v) {
        const double w = c * std::pow(v, -p.alpha);
        return (1.0 - std::pow(1.0 + w, -n)) * v;
      };
    } else {
      f = [=](double v) {
        const double w = c * std::pow(v, -p.alpha);
        return std::pow(w, k) * std::pow(1.0 + w, -n - k) * v;
      };
    }
    const auto q = adaptive_quadrature(f, p.d0, inf, 1e-11, 1e-10, 20000);
    REQUIRE(q.converged);
    const double weight = (k == 0) ? 1.0 : poch_over_fact(n, k);
    sum += pn * weight * q.value;
  }
  const double scaled = 2.0 * sum / (p.d0 * p.d0);
  return (k == 0) ? 1.0 + scaled : -scaled;
}

// Connection outage rebuilt through the generic coverage machinery: one
// interferer class per residual-stream count, annulus [d0, inf), mixed over
// the receiver's own stream count.
double outage_via_scenarios(const SecurityParams& p, double gamma_l) {
  double cov = 0.0;
  for (int n0 = 1; n0 <= p.Nt; ++n0) {
    const double pn0 = p_requests(n0, p);
    if (pn0 == 0.0) continue;
    Scenario scn;
    scn.signal = GammaGain{n0, 1.0 / n0};
    scn.alpha = p.alpha;
    scn.serving = FixedServing{p.r0};
    for (int n = 1; n <= p.Nt; ++n) {
      const double pn = p_requests(n, p);
      if (pn == 0.0) continue;
      InterfererClass cls;
      cls.density = p.lambda_t * pn;
      cls.inner = [d0 = p.d0](double) { return d0; };
      cls.outer = [](double) { return std::numeric_limits<double>::infinity(); };
      cls.gain = GammaGain{n, 1.0};
      cls.power = 1.0 / n;
      scn.interferers.push_back(cls);
    }
    cov += pn0 * coverage_theorem1(scn, gamma_l).value;
  }
  return 1.0 - cov;
}

SecurityParams fig_params() {
  SecurityParams p;
  p.lambda_t = 1e-2;
  p.lambda_e = 1e-3;
  p.Nt = 4;
  p.r0 = 1.0;
  p.d0 = 3.0;
  p.alpha = 4.0;
  return p;
}

}  // namespace

TEST_CASE("residual stream pmf matches the truncated Poisson masses") {
  SecurityParams p = fig_params();
  // d0 chosen so the request mean pi*d0^2*lambda_t equals 2 exactly.
  p.d0 = std::sqrt(2.0 / (M_PI * p.lambda_t));
  const double e2 = std::exp(-2.0);
  CHECK(rel_err(p_requests(4, p), e2) < 1e-14);
  CHECK(rel_err(p_requests(3, p), 2.0 * e2) < 1e-14);
  CHECK(rel_err(p_requests(2, p), 2.0 * e2) < 1e-14);
  CHECK(rel_err(p_requests(1, p), 1.0 - 5.0 * e2) < 1e-14);
  CHECK(p_requests(0, p) == 0.0);
  CHECK(p_requests(5, p) == 0.0);
}

TEST_CASE("stream pmf normalizes and degenerates correctly") {
  SecurityParams p = fig_params();
  for (double d0 : {0.5, 2.0, 5.0, 12.0}) {
    p.d0 = d0;
    double total = 0.0;
    for (int n = 1; n <= p.Nt; ++n) total += p_requests(n, p);
    CHECK(std::fabs(total - 1.0) < 1e-14);
  }
  p.d0 = 0.0;
  CHECK(p_requests(p.Nt, p) == 1.0);
  CHECK(p_requests(1, p) == 0.0);
  p.Nt = 1;
  p.d0 = 7.0;
  CHECK(p_requests(1, p) == 1.0);
}

TEST_CASE("exponent entries match the defining interference integral") {
  SecurityParams p = fig_params();
  SUBCASE("single-antenna single-term column") {
    p.Nt = 1;
    p.d0 = 2.0;
    for (int k : {0, 1, 2}) {
      const double got = security_qk(k, 1, p, 1.0);
      const double want = qk_oracle(k, 1, p, 1.0);
      CHECK(rel_err(got, want) < 1e-8);
    }
  }
  SUBCASE("mixed stream counts") {
    for (int n0 : {2, 4}) {
      for (int k : {0, 1, 3}) {
        const double got = security_qk(k, n0, p, 0.8);
        const double want = qk_oracle(k, n0, p, 0.8);
        CHECK(rel_err(got, want) < 1e-8);
      }
    }
  }
  SUBCASE("steep path loss") {
    p.alpha = 3.3;
    p.d0 = 1.7;
    const double got = security_qk(2, 3, p, 2.5);
    const double want = qk_oracle(2, 3, p, 2.5);
    CHECK(rel_err(got, want) < 1e-8);
  }
}

TEST_CASE("exponent entries vanish or normalize as the threshold drops") {
  SecurityParams p = fig_params();
  CHECK(std::fabs(security_qk(0, 4, p, 1e-12) - 1.0) < 1e-8);
  for (int k : {1, 2, 3})
    CHECK(std::fabs(security_qk(k, 4, p, 1e-12)) < 1e-10);
  // Diagonal of the outage exponent stays non-positive: q0 >= 1.
  for (double g : {0.01, 0.3, 1.0, 20.0})
    CHECK(security_qk(0, 2, p, g) >= 1.0);
  for (int k : {1, 2})
    CHECK(security_qk(k, 4, p, 1.0) < 0.0);
}

TEST_CASE("connection outage agrees with the coverage-framework route") {
  SecurityParams p = fig_params();
  for (double g : {0.1, 1.0, 10.0}) {
    const double got = connection_outage(p, g);
    const double want = outage_via_scenarios(p, g);
    CHECK(std::fabs(got - want) < 1e-9);
  }
  p.d0 = 1.2;
  p.alpha = 3.5;
  const double got = connection_outage(p, 2.0);
  const double want = outage_via_scenarios(p, 2.0);
  CHECK(std::fabs(got - want) < 1e-9);
}

TEST_CASE("connection outage is continuous at d0 = 0") {
  SecurityParams p = fig_params();
  for (double g : {0.3, 1.0, 5.0}) {
    p.d0 = 0.0;
    const double base = connection_outage(p, g);
    p.d0 = 1e-6;
    CHECK(std::fabs(connection_outage(p, g) - base) < 1e-9);
  }
}

TEST_CASE("connection outage is monotone in the threshold and well bounded") {
  SecurityParams p = fig_params();
  double prev = 0.0;
  for (double g = 1e-3; g < 1e5; g *= 7.0) {
    const double cur = connection_outage(p, g);
    CHECK(cur >= prev - 1e-12);
    CHECK(cur >= 0.0);
    CHECK(cur <= 1.0);
    prev = cur;
  }
  CHECK(connection_outage(p, 0.0) == 0.0);
  CHECK(connection_outage(p, 1e-9) < 1e-6);
  CHECK(connection_outage(p, 1e9) > 0.999);
}

TEST_CASE("coordination range lowers the connection outage") {
  SecurityParams p = fig_params();
  p.d0 = 0.0;
  const double bare = connection_outage(p, 1.0);
  p.d0 = 4.0;
  const double coordinated = connection_outage(p, 1.0);
  CHECK(coordinated < bare);
}

TEST_CASE("secrecy outage bound matches its defining plane integral") {
  SecurityParams p = fig_params();
  const double delta = 2.0 / p.alpha;
  for (double ge : {0.05, 0.5, 3.0}) {
    double cmix = 0.0;
    for (int n = 1; n <= p.Nt; ++n)
      cmix += p_requests(n, p) *
              std::exp(std::lgamma(n + delta) - std::lgamma((double)n) -
                       delta * std::log((double)n));
    double want = 0.0;
    for (int n0 = 1; n0 <= p.Nt; ++n0) {
      const double pn0 = p_requests(n0, p);
      if (pn0 == 0.0) continue;
      const auto q = adaptive_quadrature(
          [&](double z) {
            const double sdelta = std::pow(ge * n0, delta) * z * z;
            return 2.0 * M_PI * z *
                   std::pow(1.0 + ge, 1.0 - n0) *
                   std::exp(-M_PI * p.lambda_t * std::tgamma(1.0 - delta) *
                            cmix * sdelta);
          },
          0.0, std::numeric_limits<double>::infinity(), 1e-12, 1e-12);
      REQUIRE(q.converged);
      want += pn0 * (-std::expm1(-p.lambda_e * q.value));
    }
    CHECK(rel_err(secrecy_outage_ub(p, ge), want) < 1e-9);
  }
}

TEST_CASE("secrecy outage bound limits") {
  SecurityParams p = fig_params();
  CHECK(secrecy_outage_ub(p, 1e-12) > 0.999);
  CHECK(secrecy_outage_ub(p, 1e12) < 1e-3);
  double prev = 2.0;
  for (double g = 1e-4; g < 1e6; g *= 10.0) {
    const double cur = secrecy_outage_ub(p, g);
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
  p.lambda_e = 0.0;
  CHECK(secrecy_outage_ub(p, 1.0) == 0.0);
}

TEST_CASE("secrecy capacity solves both threshold equations") {
  SecurityParams p = fig_params();
  const auto res = secrecy_capacity(p, 3.0, 0.1, 0.01);
  REQUIRE(res.feasible);
  p.d0 = 3.0;
  CHECK(std::fabs(connection_outage(p, res.gamma_l_th) - 0.1) < 1e-8);
  CHECK(std::fabs(secrecy_outage_ub(p, res.gamma_e_th) - 0.01) < 1e-8);
  CHECK(res.capacity >= 0.0);
  // Without eavesdroppers the rate target is unconstrained from below.
  SecurityParams clean = p;
  clean.lambda_e = 0.0;
  const auto free = secrecy_capacity(clean, 3.0, 0.1, 0.01);
  CHECK(free.capacity >= res.capacity);
}

TEST_CASE("capacity optimum over the coordination range is interior") {
  SecurityParams p = fig_params();
  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(10.0 * i / 19.0);
  grid.front() = 0.0;
  const auto opt = optimize_d0(p, 0.1, 0.01, grid);
  const auto at0 = secrecy_capacity(p, 0.0, 0.1, 0.01);
  CHECK(opt.d0 > grid[1] / 2.0);
  CHECK(opt.d0 < grid[18]);
  CHECK(opt.capacity > 1.10 * at0.capacity);
  // Grid values rise to a single interior peak and fall past it.
  std::vector<double> vals;
  for (double d0 : grid) vals.push_back(secrecy_capacity(p, d0, 0.1, 0.01).capacity);
  std::size_t best = 0;
  for (std::size_t i = 1; i < vals.size(); ++i)
    if (vals[i] > vals[best]) best = i;
  CHECK(best > 0);
  CHECK(best < vals.size() - 1);
  for (std::size_t i = 0; i < best; ++i) CHECK(vals[i] <= vals[i + 1] + 1e-12);
  for (std::size_t i = best; i + 1 < vals.size(); ++i)
    CHECK(vals[i] >= vals[i + 1] - 1e-12);
}

TEST_CASE("security parameter validation") {
  SecurityParams p = fig_params();
  CHECK_THROWS_AS(connection_outage(p, -1.0), std::invalid_argument);
  p.alpha = 2.0;
  CHECK_THROWS_AS(connection_outage(p, 1.0), std::domain_error);
  p = fig_params();
  p.Nt = 0;
  CHECK_THROWS_AS(connection_outage(p, 1.0), std::invalid_argument);
  p = fig_params();
  CHECK_THROWS_AS(secrecy_capacity(p, 3.0, 0.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(secrecy_capacity(p, 3.0, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(security_qk(-1, 2, p, 1.0), std::invalid_argument);
  p.d0 = 0.0;
  CHECK_THROWS_AS(security_qk(0, 2, p, 1.0), std::invalid_argument);
}
