#include "toepcov/hetnet.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "toepcov/specfun.hpp"
#include "toepcov/toeplitz.hpp"

namespace toepcov {

namespace {

void validate(const std::vector<TierParams>& tiers, std::size_t k,
              double gamma, double alpha) {
  if (tiers.empty()) throw std::invalid_argument("hetnet: no tiers");
  if (k >= tiers.size()) throw std::invalid_argument("hetnet: bad tier index");
  if (!(alpha > 2.0))
    throw std::domain_error("hetnet: alpha must exceed 2 (delta < 1)");
  if (!(gamma > 0.0)) throw std::invalid_argument("hetnet: gamma <= 0");
  for (const auto& t : tiers) {
    if (!(t.lambda > 0.0) || !(t.P > 0.0) || !(t.B > 0.0))
      throw std::invalid_argument("hetnet: tier parameters must be positive");
    if (t.U < 1 || t.Mant < t.U)
      throw std::invalid_argument("hetnet: need 1 <= U <= Mant");
  }
}

// The display evaluated for any i >= 0; at i = 0 the factor delta/(i-delta)
// degenerates to -1 and the result is the (negative) diagonal value.
double display_ci(const std::vector<TierParams>& tiers, std::size_t k, int i,
                  double gamma, double alpha) {
  const double delta = 2.0 / alpha;
  const TierParams& tk = tiers[k];
  const double ref = std::pow(tk.P * tk.B, delta);
  double sum = 0.0;
  for (const auto& tj : tiers) {
    const double y = tk.U * tk.B * gamma / (tj.U * tj.B);
    const double pochhammer =
        std::exp(ln_gamma(tj.U + i) - ln_gamma(tj.U) - ln_gamma(i + 1.0));
    const double f = gauss_2f1(i - delta, tj.U + i, i + 1.0 - delta, -y);
    sum += tj.lambda * std::pow(tj.P * tj.B, delta) * pochhammer *
           (delta / (i - delta)) * std::pow(y, i) * f;
  }
  return sum / ref;
}

}  // namespace

double hetnet_qki(const std::vector<TierParams>& tiers, int k, int i,
                  double gamma, double alpha) {
  validate(tiers, static_cast<std::size_t>(k), gamma, alpha);
  if (i < 1) throw std::invalid_argument("hetnet_qki: i must be >= 1");
  return display_ci(tiers, k, i, gamma, alpha);
}

double hetnet_qk0(const std::vector<TierParams>& tiers, int k, double gamma,
                  double alpha) {
  validate(tiers, static_cast<std::size_t>(k), gamma, alpha);
  return display_ci(tiers, k, 0, gamma, alpha);
}

std::vector<double> hetnet_tier_terms(const std::vector<TierParams>& tiers,
                                      double gamma, double alpha) {
  validate(tiers, 0, gamma, alpha);
  std::vector<double> terms(tiers.size());
  for (std::size_t k = 0; k < tiers.size(); ++k) {
    const int m = tiers[k].Mant - tiers[k].U + 1;
    std::vector<double> col(m);
    for (int i = 0; i < m; ++i)
      col[i] = -display_ci(tiers, k, i, gamma, alpha) / tiers[k].lambda;
    if (col[0] == 0.0)
      throw std::domain_error("hetnet_coverage: singular tier matrix");
    double sum = 0.0;
    for (double v : inv_first_column(col)) sum += v;
    terms[k] = sum;
  }
  return terms;
}

CoverageResult hetnet_coverage(const std::vector<TierParams>& tiers,
                               double gamma, double alpha) {
  CoverageResult out;
  double total = 0.0;
  for (double t : hetnet_tier_terms(tiers, gamma, alpha)) total += t;
  const double clamped = std::min(1.0, std::max(0.0, total));
  out.clamp_warning = std::abs(clamped - total) > 1e-6;
  out.value = clamped;
  out.method = Method::analytic;
  out.abs_error = 1e-10;
  return out;
}

CoverageResult hetnet_coverage_theorem1(const std::vector<TierParams>& tiers,
                                        double gamma, double alpha,
                                        double noise_power, double abs_tol) {
  validate(tiers, 0, gamma, alpha);
  const double delta = 2.0 / alpha;
  CoverageResult out;
  double total = 0.0, err = 0.0;
  bool clamp = false, neg = false;
  for (std::size_t k = 0; k < tiers.size(); ++k) {
    const TierParams& tk = tiers[k];
    const double ref = std::pow(tk.P * tk.B, delta);
    double zk = 0.0;
    for (const auto& tj : tiers)
      zk += tj.lambda * std::pow(tj.P * tj.B, delta) / ref;
    const double ak = tk.lambda / zk;

    Scenario scn;
    scn.signal = {tk.Mant - tk.U + 1, tk.P / tk.U};
    scn.alpha = alpha;
    scn.noise_power = noise_power;
    scn.serving = NearestPointServing{zk};
    for (const auto& tj : tiers) {
      const double shift =
          std::pow(tj.P * tj.B / (tk.P * tk.B), 1.0 / alpha);
      scn.interferers.push_back(
          {tj.lambda, [shift](double r) { return shift * r; },
           [](double) { return std::numeric_limits<double>::infinity(); },
           GammaGain{tj.U, 1.0}, tj.P / tj.U});
    }
    const CoverageResult tier = coverage_theorem1(scn, gamma, abs_tol);
    total += ak * tier.value;
    err += ak * tier.abs_error;
    clamp = clamp || tier.clamp_warning;
    neg = neg || tier.negative_column;
  }
  const double clamped = std::min(1.0, std::max(0.0, total));
  out.clamp_warning = clamp || std::abs(clamped - total) > 1e-6;
  out.negative_column = neg;
  out.value = clamped;
  out.abs_error = err;
  out.method = Method::analytic;
  return out;
}

}  // namespace toepcov
