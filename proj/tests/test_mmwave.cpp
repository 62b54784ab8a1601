#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <toepcov/mmwave.hpp>
#include <toepcov/quadrature.hpp>
#include <toepcov/specfun.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace toepcov;

namespace {

MmWaveParams fig_params(int M) {
  MmWaveParams p;
  p.lambda_t = 1e-3;
  p.R = 200.0;
  p.alpha = 2.1;
  p.gamma = 3.16227766016837952;  // 5 dB
  p.M = M;
  return p;
}

// Independent per-distance exponent oracle.  The averaged per-interferer
// factor under a uniformly random beam offset collapses, on the main lobe,
// to a Gauss-2F1 lobe average (checked separately below), so the defining
// exponent of the interference field outside radius r is
//   F(s) = -2 pi lambda int_r^R (1 - 2F1(M, 1/2; 1; -(s/M) v^-alpha)) v dv
// and the k-th column coefficient is (-s0)^k/k! F^(k)(s0) at
// s0 = gamma M r^alpha.  Derivatives are taken by central differences; the
// implementation route integrates in a different variable with different
// hypergeometric parameters, so agreement is a real cross-check.
double defining_exponent(double s, double r, const MmWaveParams& p) {
  auto f = [&](double v) {
    double y = (s / p.M) * std::pow(v, -p.alpha);
    return (1.0 - gauss_2f1(p.M, 0.5, 1.0, -y)) * v;
  };
  QuadratureResult q = adaptive_quadrature(f, r, p.R, 1e-12, 1e-11, 20000);
  REQUIRE(q.converged);
  return -2.0 * 3.14159265358979323846 * p.lambda_t * q.value;
}

double qtilde_oracle(int k, double r, const MmWaveParams& p) {
  double s0 = p.gamma * p.M * std::pow(r, p.alpha);
  if (k == 0) return defining_exponent(s0, r, p);
  if (k == 1) {
    double h = s0 * 1e-5;
    double d1 = (defining_exponent(s0 + h, r, p) -
                 defining_exponent(s0 - h, r, p)) / (2.0 * h);
    return -s0 * d1;
  }
  double h = s0 * 2e-4;
  double d2 = (defining_exponent(s0 + h, r, p) -
               2.0 * defining_exponent(s0, r, p) +
               defining_exponent(s0 - h, r, p)) / (h * h);
  return 0.5 * s0 * s0 * d2;
}

}  // namespace

TEST_CASE("array pattern: boundary values, range, and mean power 1/Nt") {
  CHECK(gain_actual(0.0, 8) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gain_actual(0.37, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gain_actual(-0.91, 1) == doctest::Approx(1.0).epsilon(1e-14));
  for (int nt : {2, 4, 32}) {
    for (int i = 0; i <= 400; ++i) {
      double phi = -1.0 + 2.0 * i / 400.0;
      double g = gain_actual(phi, nt);
      CHECK(g >= 0.0);
      CHECK(g <= 1.0 + 1e-12);
      CHECK(gain_actual(-phi, nt) == doctest::Approx(g).epsilon(1e-12));
    }
  }
  // At half-wavelength spacing the pattern is a scaled Fejer kernel whose
  // offset average is exactly 1/Nt.
  for (int nt : {2, 7, 16}) {
    auto f = [&](double phi) { return gain_actual(phi, nt); };
    QuadratureResult q = adaptive_quadrature(f, -1.0, 1.0, 1e-11, 1e-11, 20000);
    REQUIRE(q.converged);
    CHECK(0.5 * q.value == doctest::Approx(1.0 / nt).epsilon(1e-8));
  }
}

TEST_CASE("cosine pattern: lobe shape and support") {
  for (int nt : {1, 4, 16}) {
    CHECK(gain_cosine(0.0, nt) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gain_cosine(1.0 / nt, nt) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(gain_cosine(-1.0 / nt, nt) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(gain_cosine(0.5 / nt, nt) == doctest::Approx(0.5).epsilon(1e-12));
    if (nt > 1) {
      CHECK(gain_cosine(1.2 / nt, nt) == 0.0);
      CHECK(gain_cosine(-0.9, nt) == 0.0);
    }
    for (int i = 0; i <= 200; ++i) {
      double phi = -1.0 + 2.0 * i / 200.0;
      double g = gain_cosine(phi, nt);
      CHECK(g >= 0.0);
      CHECK(g <= (std::fabs(phi) <= 1.0 / nt ? 1.0 : 0.0) + 1e-14);
    }
  }
}

TEST_CASE("lobe average equals the Gauss-2F1 closed form") {
  struct Case { double a; int M; };
  for (Case c : {Case{0.3, 1}, Case{2.0, 3}, Case{50.0, 2}}) {
    auto f = [&](double u) {
      double l = std::cos(3.14159265358979323846 * u / 2.0);
      return std::pow(1.0 + c.a * l * l, -c.M);
    };
    QuadratureResult q = adaptive_quadrature(f, -1.0, 1.0, 1e-12, 1e-12, 20000);
    REQUIRE(q.converged);
    CHECK(0.5 * q.value ==
          doctest::Approx(gauss_2f1(c.M, 0.5, 1.0, -c.a)).epsilon(1e-10));
  }
}

TEST_CASE("J coefficient: unit value at x = 0 and pinned reference points") {
  double delta = 2.0 / 2.1;
  for (int k : {0, 1, 3})
    for (int m : {1, 3})
      CHECK(mmwave_J(k, 0.0, m, delta) == doctest::Approx(1.0).epsilon(1e-14));
  // High-precision series oracle values.
  CHECK(mmwave_J(0, -1.0, 3, delta) ==
        doctest::Approx(29.743622046342669991).epsilon(1e-12));
  CHECK(mmwave_J(1, -3.1622776601683795, 3, delta) ==
        doctest::Approx(0.88500680341229532028).epsilon(1e-12));
  CHECK(mmwave_J(2, -0.25, 3, delta) ==
        doctest::Approx(0.63439165290499742601).epsilon(1e-12));
  CHECK_THROWS_AS(mmwave_J(0, 0.5, 3, delta), std::invalid_argument);
  CHECK_THROWS_AS(mmwave_J(-1, -0.5, 3, delta), std::invalid_argument);
  CHECK_THROWS_AS(mmwave_J(0, -0.5, 3, 1.5), std::domain_error);
}

TEST_CASE("y coefficient: component identity and small-cell limit") {
  double delta = 2.0 / 2.1;
  double lambda = 1e-3, R = 200.0;
  double c = 3.14159265358979323846 * lambda * R * R;
  double bracket = -std::expm1(-c) - c * std::exp(-c);
  double tail = c - 1.0 + std::exp(-c);
  for (int k : {0, 1, 2}) {
    double x = (k == 0) ? -1.3 : -0.6;
    double expect = mmwave_J(k, x, 3, delta) * bracket + (k == 0 ? tail : 0.0);
    CHECK(mmwave_y(k, x, lambda, R, 3, delta) ==
          doctest::Approx(expect).epsilon(1e-14));
  }
  // As lambda -> 0 both bracket terms behave like (pi lambda R^2)^2 / 2.
  double ls = 1e-10;
  double cs = 3.14159265358979323846 * ls * R * R;
  double half_c2 = 0.5 * cs * cs;
  CHECK(mmwave_y(1, -0.8, ls, R, 3, delta) / half_c2 ==
        doctest::Approx(mmwave_J(1, -0.8, 3, delta)).epsilon(1e-4));
  CHECK(mmwave_y(0, -0.8, ls, R, 3, delta) / half_c2 ==
        doctest::Approx(mmwave_J(0, -0.8, 3, delta) + 1.0).epsilon(1e-4));
}

TEST_CASE("per-distance exponent coefficients match the defining integral") {
  MmWaveParams p = fig_params(3);
  for (double r : {20.0, 90.0}) {
    CHECK(mmwave_qhat_r(0, r, p) ==
          doctest::Approx(qtilde_oracle(0, r, p)).epsilon(1e-9));
    CHECK(mmwave_qhat_r(1, r, p) ==
          doctest::Approx(qtilde_oracle(1, r, p)).epsilon(1e-6));
    CHECK(mmwave_qhat_r(2, r, p) ==
          doctest::Approx(qtilde_oracle(2, r, p)).epsilon(1e-4));
  }
  MmWaveParams p2 = fig_params(2);
  p2.gamma = 0.7;
  CHECK(mmwave_qhat_r(1, 50.0, p2) ==
        doctest::Approx(qtilde_oracle(1, 50.0, p2)).epsilon(1e-6));
  // No interference field at the ball edge, none from an empty annulus.
  CHECK(mmwave_qhat_r(1, p.R, p) == 0.0);
  CHECK(mmwave_qhat_r(0, 0.0, p) == 0.0);
  CHECK_THROWS_AS(mmwave_qhat_r(0, -1.0, p), std::invalid_argument);
  CHECK_THROWS_AS(mmwave_qhat_r(0, p.R + 1.0, p), std::invalid_argument);
}

TEST_CASE("averaged coefficients equal the serving-distance average") {
  MmWaveParams p = fig_params(3);
  double pi = 3.14159265358979323846;
  for (int k : {0, 1, 2}) {
    auto f = [&](double r) {
      return 2.0 * pi * p.lambda_t * r * std::exp(-pi * p.lambda_t * r * r) *
             mmwave_qhat_r(k, r, p);
    };
    QuadratureResult q = adaptive_quadrature(f, 0.0, p.R, 1e-8, 1e-7, 20000);
    REQUIRE(q.converged);
    CHECK(mmwave_qhat(k, p) == doctest::Approx(q.value).epsilon(2e-6));
  }
}

TEST_CASE("averaged coefficients: signs and trivial limits") {
  MmWaveParams p = fig_params(3);
  CHECK(mmwave_qhat(0, p) < 0.0);
  CHECK(mmwave_qhat(1, p) > 0.0);
  CHECK(mmwave_qhat(2, p) > 0.0);

  MmWaveParams tiny_gamma = p;
  tiny_gamma.gamma = 1e-12;
  CHECK(std::fabs(mmwave_qhat(1, tiny_gamma)) < 1e-9);

  MmWaveParams thin = p;
  thin.lambda_t = 1e-12;
  CHECK(std::fabs(mmwave_qhat(0, thin)) < 1e-6);
  CHECK(std::fabs(mmwave_qhat(1, thin)) < 1e-6);
}

TEST_CASE("coverage bound: monotone, concave on the array grid, in range") {
  const std::vector<int> grid = {4, 8, 16, 32, 64, 128, 256};
  for (int m : {1, 3}) {
    MmWaveParams p = fig_params(m);
    std::vector<double> v;
    for (int nt : grid) {
      p.Nt = nt;
      CoverageResult r = mmwave_coverage_lb(p);
      CHECK(r.method == Method::bound_lower);
      CHECK(r.value >= 0.0);
      CHECK(r.value <= 1.0);
      v.push_back(r.value);
    }
    for (size_t i = 1; i < v.size(); ++i) CHECK(v[i] >= v[i - 1] - 1e-12);
    // Discrete concavity on the geometric grid: interval slopes decrease.
    for (size_t i = 2; i < v.size(); ++i) {
      double s1 = (v[i - 1] - v[i - 2]) / (grid[i - 1] - grid[i - 2]);
      double s2 = (v[i] - v[i - 1]) / (grid[i] - grid[i - 1]);
      CHECK(s2 - s1 <= 1e-9);
    }
  }
}

TEST_CASE("coverage bound: single-Nakagami case is log-linear in 1/Nt") {
  MmWaveParams p = fig_params(1);
  double pi = 3.14159265358979323846;
  double los = -std::expm1(-pi * p.lambda_t * p.R * p.R);
  std::vector<double> t, lnv;
  for (int nt : {4, 8, 16, 64}) {
    p.Nt = nt;
    t.push_back(1.0 / nt);
    lnv.push_back(std::log(mmwave_coverage_lb(p).value / los));
  }
  double slope = (lnv[1] - lnv[0]) / (t[1] - t[0]);
  for (size_t i = 2; i < t.size(); ++i) {
    double s = (lnv[i] - lnv[i - 1]) / (t[i] - t[i - 1]);
    CHECK(s == doctest::Approx(slope).epsilon(1e-9));
  }
}

TEST_CASE("coverage bound sits below the unaveraged coverage when exact") {
  // With a single Nakagami stage the bound is a Jensen inequality and holds
  // for every array size.
  MmWaveParams p = fig_params(1);
  for (int nt : {4, 16, 64}) {
    p.Nt = nt;
    double lb = mmwave_coverage_lb(p).value;
    double ex = mmwave_coverage_exact(p, 1e-8).value;
    CHECK(lb <= ex + 1e-9);
  }
  // With more stages the polynomial step is an approximation: below at
  // small arrays, within a half percent past the knee.
  MmWaveParams p3 = fig_params(3);
  for (int nt : {4, 8}) {
    p3.Nt = nt;
    CHECK(mmwave_coverage_lb(p3).value <=
          mmwave_coverage_exact(p3, 1e-8).value);
  }
  for (int nt : {16, 32, 64, 128, 256}) {
    p3.Nt = nt;
    double gap = mmwave_coverage_lb(p3).value -
                 mmwave_coverage_exact(p3, 1e-8).value;
    CHECK(std::fabs(gap) <= 1e-2);
  }
}

TEST_CASE("unaveraged coverage: threshold limits and monotonicity") {
  MmWaveParams p = fig_params(3);
  p.Nt = 16;
  double pi = 3.14159265358979323846;
  double los = -std::expm1(-pi * p.lambda_t * p.R * p.R);
  MmWaveParams easy = p;
  easy.gamma = 1e-12;
  CHECK(mmwave_coverage_exact(easy, 1e-9).value ==
        doctest::Approx(los).epsilon(1e-8));
  double c01, c10, c1000;
  { MmWaveParams q = p; q.gamma = 0.1;  c01 = mmwave_coverage_exact(q).value; }
  { MmWaveParams q = p; q.gamma = 10.0; c10 = mmwave_coverage_exact(q).value; }
  { MmWaveParams q = p; q.gamma = 1e3;  c1000 = mmwave_coverage_exact(q).value; }
  CHECK(c01 > c10);
  CHECK(c10 > c1000);
  CHECK(c1000 < 0.2);
}

TEST_CASE("parameter validation") {
  MmWaveParams p = fig_params(3);
  p.alpha = 2.0;
  CHECK_THROWS_AS(mmwave_coverage_lb(p), std::domain_error);
  CHECK_THROWS_WITH(mmwave_coverage_lb(p), "path-loss exponent must exceed 2");
  p = fig_params(3);
  p.Nt = 0;
  CHECK_THROWS_AS(mmwave_coverage_lb(p), std::invalid_argument);
  p = fig_params(3);
  p.M = 0;
  CHECK_THROWS_AS(mmwave_qhat(0, p), std::invalid_argument);
  p = fig_params(3);
  p.lambda_t = 0.0;
  CHECK_THROWS_AS(mmwave_coverage_exact(p), std::invalid_argument);
  CHECK_THROWS_AS(gain_actual(0.3, 0), std::invalid_argument);
  CHECK_THROWS_AS(gain_cosine(0.3, 0), std::invalid_argument);
}
