#include "toepcov/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <variant>

#include "mc_kernels.hpp"
#include "toepcov/rng.hpp"
#include "toepcov/specfun.hpp"

namespace toepcov {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kBlock = 4096;

// Radius factor beyond which a full-plane interferer field is dropped; the
// neglected mean interference is factor^(2-alpha) = 1e-4 of the retained
// part.
double farfield_factor(double alpha) {
  return std::pow(1e4, 1.0 / (alpha - 2.0));
}

struct Workspace {
  std::vector<double> u, g;
  Workspace() : u(kBlock), g(kBlock) {}
};

void check_common(double alpha, std::uint64_t trials) {
  if (!(alpha > 2.0))
    throw std::domain_error("path-loss exponent must exceed 2");
  if (trials == 0) throw std::invalid_argument("trials must be positive");
}

// Gamma(shape, 1) with an integer shape; small shapes run as sums of
// exponentials, matching the nested-stage construction used by the grid.
double gamma_int(RandomStream& rs, int shape) {
  return rs.gamma(static_cast<double>(shape), 1.0);
}

// Total gain-weighted path loss of one PPP annulus [lo, hi]: count is
// Poisson, squared radii are uniform on [lo^2, hi^2], gains are
// Gamma(shape, 1) sums of exponentials.  Blocked through the fast kernels.
double annulus_interference(RandomStream& rs, Workspace& ws, double density,
                            double lo, double hi, int shape,
                            double half_alpha) {
  if (!(density > 0.0) || !(hi > lo)) return 0.0;
  const double lo2 = lo * lo, hi2 = hi * hi;
  long long n = rs.poisson(density * kPi * (hi2 - lo2));
  double acc = 0.0;
  while (n > 0) {
    const int m = static_cast<int>(std::min<long long>(n, kBlock));
    if (shape <= 8) {
      rs.fill_uniform_pos(ws.u.data(), m);
      kern::neg_log(ws.u.data(), ws.g.data(), m);
      for (int s = 1; s < shape; ++s) {
        rs.fill_uniform_pos(ws.u.data(), m);
        kern::add_neg_log(ws.u.data(), ws.g.data(), m);
      }
    } else {
      for (int i = 0; i < m; ++i) ws.g[i] = gamma_int(rs, shape);
    }
    rs.fill_uniform_pos(ws.u.data(), m);
    acc += kern::weighted_affine_pow_sum(ws.u.data(), ws.g.data(), m, lo2,
                                         hi2 - lo2, half_alpha);
    n -= m;
  }
  return acc;
}

double sample_serving(RandomStream& rs, const ServingModel& model) {
  if (const auto* f = std::get_if<FixedServing>(&model)) return f->r0;
  if (const auto* n = std::get_if<NearestPointServing>(&model))
    return std::sqrt(rs.exp1() / (kPi * n->lambda));
  const auto& l = std::get<LosBallServing>(model);
  const double los = -std::expm1(-kPi * l.lambda * l.R * l.R);
  return std::sqrt(-std::log1p(-rs.uniform() * los) / (kPi * l.lambda));
}

void check_scenario(const Scenario& scn) {
  if (scn.signal.shape < 1 || !(scn.signal.scale > 0.0))
    throw std::invalid_argument("signal gain must have positive shape and scale");
  if (const auto* f = std::get_if<FixedServing>(&scn.serving)) {
    if (!(f->r0 > 0.0)) throw std::invalid_argument("r0 must be positive");
  } else if (const auto* n = std::get_if<NearestPointServing>(&scn.serving)) {
    if (!(n->lambda > 0.0))
      throw std::invalid_argument("serving density must be positive");
  } else {
    const auto& l = std::get<LosBallServing>(scn.serving);
    if (!(l.lambda > 0.0) || !(l.R > 0.0))
      throw std::invalid_argument("serving density and R must be positive");
  }
  for (const auto& c : scn.interferers) {
    if (c.density < 0.0 || !c.inner || !c.outer)
      throw std::invalid_argument("interferer class is incomplete");
    if (c.gain.shape < 1 || !(c.gain.scale > 0.0) || !(c.power > 0.0))
      throw std::invalid_argument("interferer gain must be positive");
  }
}

// Interference seen at the origin for one sampled serving distance.
double scenario_interference(RandomStream& rs, Workspace& ws,
                             const Scenario& scn, double r, double ff) {
  double total = 0.0;
  for (const auto& c : scn.interferers) {
    const double lo = c.inner(r);
    double hi = c.outer(r);
    if (std::isinf(hi)) hi = std::max(lo, r) * ff;
    total += c.power * c.gain.scale *
             annulus_interference(rs, ws, c.density, lo, hi, c.gain.shape,
                                  scn.alpha / 2.0);
  }
  return total;
}

McResult binomial(std::uint64_t hits, std::uint64_t trials) {
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
}

// Runs one boolean trial per index on (seed, index)-derived streams and
// counts successes; WS is a per-thread scratch type.
template <class WS, class Trial>
std::uint64_t count_trials(std::uint64_t trials, std::uint64_t seed,
                           int threads, const Trial& trial) {
  threads = std::max(1, threads);
  auto chunk = [&](std::uint64_t t0, std::uint64_t t1) {
    WS ws;
    std::uint64_t hits = 0;
    for (std::uint64_t t = t0; t < t1; ++t) {
      RandomStream rs = RandomStream::for_trial(seed, t);
      if (trial(rs, ws)) ++hits;
    }
    return hits;
  };
  if (threads == 1 || trials < 2 * static_cast<std::uint64_t>(threads))
    return chunk(0, trials);
  std::vector<std::uint64_t> part(threads, 0);
  std::vector<std::thread> pool;
  const std::uint64_t step = (trials + threads - 1) / threads;
  for (int i = 0; i < threads; ++i)
    pool.emplace_back([&, i] {
      const std::uint64_t t0 = step * i;
      const std::uint64_t t1 = std::min(trials, t0 + step);
      if (t0 < t1) part[i] = chunk(t0, t1);
    });
  for (auto& th : pool) th.join();
  std::uint64_t hits = 0;
  for (auto h : part) hits += h;
  return hits;
}

}  // namespace

McResult mc_coverage_general(const Scenario& scn, double gamma,
                             std::uint64_t trials, std::uint64_t seed,
                             int threads) {
  check_common(scn.alpha, trials);
  check_scenario(scn);
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  const double ff = farfield_factor(scn.alpha);
  auto trial = [&](RandomStream& rs, Workspace& ws) {
    const double r = sample_serving(rs, scn.serving);
    const double s = gamma_int(rs, scn.signal.shape) * scn.signal.scale *
                     std::pow(r, -scn.alpha);
    const double i = scenario_interference(rs, ws, scn, r, ff);
    return s > gamma * (scn.noise_power + i);
  };
  return binomial(count_trials<Workspace>(trials, seed, threads, trial),
                  trials);
}

std::vector<std::vector<McResult>> mc_coverage_grid(
    const Scenario& scn, const std::vector<int>& signal_shapes,
    const std::vector<double>& gammas, std::uint64_t trials,
    std::uint64_t seed, int threads) {
  check_common(scn.alpha, trials);
  check_scenario(scn);
  if (signal_shapes.empty() || gammas.empty())
    throw std::invalid_argument("grid axes must be non-empty");
  for (std::size_t i = 0; i < signal_shapes.size(); ++i)
    if (signal_shapes[i] < 1 ||
        (i > 0 && signal_shapes[i] <= signal_shapes[i - 1]))
      throw std::invalid_argument(
          "signal shapes must be positive and strictly increasing");
  for (double g : gammas)
    if (!(g > 0.0)) throw std::invalid_argument("gamma must be positive");

  const std::size_t ns = signal_shapes.size(), ng = gammas.size();
  const double ff = farfield_factor(scn.alpha);
  struct GridWs {
    Workspace ws;
    std::vector<std::uint64_t> hits;
  };
  threads = std::max(1, threads);
  std::vector<std::vector<std::uint64_t>> parts;

  auto chunk = [&](std::uint64_t t0, std::uint64_t t1,
                   std::vector<std::uint64_t>& hits) {
    Workspace ws;
    hits.assign(ns * ng, 0);
    for (std::uint64_t t = t0; t < t1; ++t) {
      RandomStream rs = RandomStream::for_trial(seed, t);
      const double r = sample_serving(rs, scn.serving);
      const double path = std::pow(r, -scn.alpha);
      const double i = scenario_interference(rs, ws, scn, r, ff);
      const double denom_base = scn.noise_power + i;
      double stages = 0.0;
      int have = 0;
      for (std::size_t si = 0; si < ns; ++si) {
        while (have < signal_shapes[si]) {
          stages += rs.exp1();
          ++have;
        }
        const double s = stages * scn.signal.scale * path;
        for (std::size_t gi = 0; gi < ng; ++gi)
          if (s > gammas[gi] * denom_base) ++hits[si * ng + gi];
      }
    }
  };

  if (threads == 1 || trials < 2 * static_cast<std::uint64_t>(threads)) {
    parts.resize(1);
    chunk(0, trials, parts[0]);
  } else {
    parts.resize(threads);
    std::vector<std::thread> pool;
    const std::uint64_t step = (trials + threads - 1) / threads;
    for (int i = 0; i < threads; ++i)
      pool.emplace_back([&, i] {
        const std::uint64_t t0 = step * i;
        const std::uint64_t t1 = std::min(trials, t0 + step);
        parts[i].assign(ns * ng, 0);
        if (t0 < t1) chunk(t0, t1, parts[i]);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<std::vector<McResult>> out(ns, std::vector<McResult>(ng));
  for (std::size_t si = 0; si < ns; ++si)
    for (std::size_t gi = 0; gi < ng; ++gi) {
      std::uint64_t hits = 0;
      for (const auto& p : parts) hits += p[si * ng + gi];
      out[si][gi] = binomial(hits, trials);
    }
  return out;
}

McResult mc_hetnet_coverage(const std::vector<TierParams>& tiers, double gamma,
                            double alpha, std::uint64_t trials,
                            std::uint64_t seed, int threads) {
  check_common(alpha, trials);
  if (tiers.empty()) throw std::invalid_argument("at least one tier");
  for (const auto& t : tiers) {
    if (!(t.lambda > 0.0) || !(t.P > 0.0) || !(t.B > 0.0))
      throw std::invalid_argument("tier parameters must be positive");
    if (t.Mant < 1 || t.U < 1 || t.U > t.Mant)
      throw std::invalid_argument("tier antennas must satisfy 1 <= U <= Mant");
  }
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  const double ff = farfield_factor(alpha);
  const std::size_t nt = tiers.size();
  std::vector<double> assoc(nt);  // (P B)^(-1/alpha): association metric
  for (std::size_t j = 0; j < nt; ++j)
    assoc[j] = std::pow(tiers[j].P * tiers[j].B, -1.0 / alpha);

  auto trial = [&](RandomStream& rs, Workspace& ws) {
    double d[16];
    std::size_t k = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nt; ++j) {
      d[j] = std::sqrt(rs.exp1() / (kPi * tiers[j].lambda));
      const double m = d[j] * assoc[j];
      if (m < best) {
        best = m;
        k = j;
      }
    }
    const TierParams& tk = tiers[k];
    const double s = gamma_int(rs, tk.Mant - tk.U + 1) * (tk.P / tk.U) *
                     std::pow(d[k], -alpha);
    double i = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      const double w = tiers[j].P / tiers[j].U;
      if (j != k)
        i += w * gamma_int(rs, tiers[j].U) * std::pow(d[j], -alpha);
      i += w * annulus_interference(rs, ws, tiers[j].lambda, d[j], ff * d[j],
                                    tiers[j].U, alpha / 2.0);
    }
    return s > gamma * i;
  };
  if (nt > 16) throw std::invalid_argument("at most 16 tiers");
  return binomial(count_trials<Workspace>(trials, seed, threads, trial),
                  trials);
}

namespace {

// Scratch for the request-protocol simulation: flat cell grid over the
// sampled region with intrusive lists, reset via the touched-cell log.
struct OutageWs {
  std::vector<double> txx, txy, rxx, rxy;
  std::vector<int> kreq;
  std::vector<int> head, next, touched;
  int cols = 0;
  double org = 0.0, cell = 1.0;

  void prepare(int cells_per_side, double origin, double cell_size) {
    cols = cells_per_side;
    org = origin;
    cell = cell_size;
    head.assign(static_cast<std::size_t>(cols) * cols, -1);
  }
  int cell_of(double x, double y) const {
    int cx = std::clamp(static_cast<int>((x - org) / cell), 0, cols - 1);
    int cy = std::clamp(static_cast<int>((y - org) / cell), 0, cols - 1);
    return cx * cols + cy;
  }
};

}  // namespace

McResult mc_connection_outage(const SecurityParams& p, double gamma_l,
                              std::uint64_t trials, std::uint64_t seed,
                              int threads) {
  check_common(p.alpha, trials);
  if (!(p.lambda_t > 0.0) || !(p.r0 > 0.0) || p.Nt < 1 || p.d0 < 0.0)
    throw std::invalid_argument("invalid link parameters");
  if (!(gamma_l > 0.0)) throw std::invalid_argument("gamma must be positive");

  const double ffr = farfield_factor(p.alpha) * std::max(p.r0, p.d0);
  const double rmax = ffr + p.d0 + p.r0;   // transmitters that can matter
  const double bound = rmax + p.r0 + 1.0;  // receivers can stick out by r0
  const double cell = std::max(p.d0, 2.0 * bound / 2048.0);
  const int cols = std::max(1, static_cast<int>(std::ceil(2.0 * bound / cell)));
  const double mean_n = p.lambda_t * kPi * rmax * rmax;
  const double d02 = p.d0 * p.d0;
  const double half_alpha = p.alpha / 2.0;

  auto trial = [&](RandomStream& rs, OutageWs& ws) {
    if (ws.cols == 0) ws.prepare(cols, -bound, cell);
    const int n = static_cast<int>(rs.poisson(mean_n));
    ws.txx.resize(n);
    ws.txy.resize(n);
    ws.rxx.resize(n);
    ws.rxy.resize(n);
    ws.kreq.assign(n + 1, 0);
    ws.next.resize(n + 1);
    ws.touched.clear();
    for (int i = 0; i < n; ++i) {
      const double rr = rmax * std::sqrt(rs.uniform());
      const double th = 2.0 * kPi * rs.uniform();
      ws.txx[i] = rr * std::cos(th);
      ws.txy[i] = rr * std::sin(th);
      const double ph = 2.0 * kPi * rs.uniform();
      ws.rxx[i] = ws.txx[i] + p.r0 * std::cos(ph);
      ws.rxy[i] = ws.txy[i] + p.r0 * std::sin(ph);
    }
    // The typical pair: receiver at the origin, transmitter at distance r0.
    const double x0x = p.r0, x0y = 0.0;

    if (p.d0 > 0.0) {
      auto insert = [&](int idx, double x, double y) {
        const int c = ws.cell_of(x, y);
        if (ws.head[c] == -1) ws.touched.push_back(c);
        ws.next[idx] = ws.head[c];
        ws.head[c] = idx;
      };
      for (int i = 0; i < n; ++i) insert(i, ws.rxx[i], ws.rxy[i]);
      insert(n, 0.0, 0.0);  // typical receiver

      auto count_near = [&](double x, double y, int own) {
        int cx = std::clamp(static_cast<int>((x - ws.org) / ws.cell), 0,
                            ws.cols - 1);
        int cy = std::clamp(static_cast<int>((y - ws.org) / ws.cell), 0,
                            ws.cols - 1);
        int cnt = 0;
        for (int ax = std::max(0, cx - 1); ax <= std::min(ws.cols - 1, cx + 1);
             ++ax)
          for (int ay = std::max(0, cy - 1);
               ay <= std::min(ws.cols - 1, cy + 1); ++ay)
            for (int it = ws.head[ax * ws.cols + ay]; it != -1;
                 it = ws.next[it]) {
              if (it == own) continue;
              const double rx = (it == n) ? 0.0 : ws.rxx[it];
              const double ry = (it == n) ? 0.0 : ws.rxy[it];
              const double dx = rx - x, dy = ry - y;
              if (dx * dx + dy * dy <= d02) ++cnt;
            }
        return cnt;
      };
      for (int i = 0; i < n; ++i)
        ws.kreq[i] = count_near(ws.txx[i], ws.txy[i], i);
      ws.kreq[n] = count_near(x0x, x0y, n);
      for (int c : ws.touched) ws.head[c] = -1;
    }

    const int nx0 = p.Nt - std::min(ws.kreq[n], p.Nt - 1);
    const double s =
        gamma_int(rs, nx0) / nx0 * std::pow(p.r0, -p.alpha);
    double i_total = 0.0;
    for (int i = 0; i < n; ++i) {
      const double dist2 = ws.txx[i] * ws.txx[i] + ws.txy[i] * ws.txy[i];
      if (dist2 <= d02 && p.d0 > 0.0) {
        // The typical receiver asked this transmitter for a null.
        const int j = ws.kreq[i];  // applicants including the typical
        const bool granted =
            j <= p.Nt - 1 || rs.uniform() * j < double(p.Nt - 1);
        if (granted) continue;
        i_total += rs.exp1() * std::pow(dist2, -half_alpha);
      } else {
        const int ni = p.Nt - std::min(ws.kreq[i], p.Nt - 1);
        i_total +=
            gamma_int(rs, ni) / ni * std::pow(dist2, -half_alpha);
      }
    }
    return s < gamma_l * i_total;  // outage
  };
  return binomial(count_trials<OutageWs>(trials, seed, threads, trial),
                  trials);
}

McResult mc_secrecy_outage(const SecurityParams& p, double gamma_e,
                           std::uint64_t trials, std::uint64_t seed,
                           int threads) {
  check_common(p.alpha, trials);
  if (!(p.lambda_t > 0.0) || p.lambda_e < 0.0 || p.Nt < 1 || p.d0 < 0.0)
    throw std::invalid_argument("invalid link parameters");
  if (!(gamma_e > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (p.lambda_e == 0.0) return {0.0, 0.0, trials};

  const double delta = 2.0 / p.alpha;
  std::vector<double> pmf(p.Nt + 1, 0.0);
  for (int n = 1; n <= p.Nt; ++n) pmf[n] = p_requests(n, p);
  // Success probability of an eavesdropper at distance z decays like
  // exp(-c z^2) with the worst case over the kept-stream count; size the
  // sampling disk so the neglected mass is ~1e-4 eavesdroppers.
  double cmix = 0.0;
  for (int n = 1; n <= p.Nt; ++n)
    if (pmf[n] > 0.0)
      cmix += pmf[n] * std::exp(std::lgamma(n + delta) - std::lgamma(n)) *
              std::pow(n, -delta);
  const double c1 = kPi * p.lambda_t * std::tgamma(1.0 - delta) * cmix *
                    std::pow(gamma_e, delta);
  const double mass = p.lambda_e * kPi / (c1 * 1e-4);
  if (mass <= 1.0) return {0.0, 0.0, trials};
  const double el2 = std::log(mass) / c1;
  const double el = std::sqrt(el2);
  const double wfield = farfield_factor(p.alpha) / std::sqrt(kPi * p.lambda_t);
  const double rfield = el + wfield;
  const double mean_tx = p.lambda_t * kPi * rfield * rfield;
  const double mean_ev = p.lambda_e * kPi * el2;
  const double kdisk = p.lambda_t * kPi * p.d0 * p.d0;

  struct EveWs {
    std::vector<double> x, y;
    std::vector<int> nkeep;
  };
  auto trial = [&](RandomStream& rs, EveWs& ws) {
    const int ne = static_cast<int>(rs.poisson(mean_ev));
    if (ne == 0) return false;
    const int n0 =
        p.Nt - std::min<long long>(rs.poisson(kdisk), p.Nt - 1);
    const int ntx = static_cast<int>(rs.poisson(mean_tx));
    ws.x.resize(ntx);
    ws.y.resize(ntx);
    ws.nkeep.resize(ntx);
    for (int i = 0; i < ntx; ++i) {
      const double rr = rfield * std::sqrt(rs.uniform());
      const double th = 2.0 * kPi * rs.uniform();
      ws.x[i] = rr * std::cos(th);
      ws.y[i] = rr * std::sin(th);
      ws.nkeep[i] =
          p.Nt - std::min<long long>(rs.poisson(kdisk), p.Nt - 1);
    }
    for (int e = 0; e < ne; ++e) {
      const double rr = el * std::sqrt(rs.uniform());
      const double th = 2.0 * kPi * rs.uniform();
      const double ex = rr * std::cos(th), ey = rr * std::sin(th);
      const double z2 = ex * ex + ey * ey;
      const double zpl = std::pow(std::max(z2, 1e-300), -p.alpha / 2.0);
      const double sig = rs.exp1() / n0 * zpl;
      double den = (n0 > 1) ? gamma_int(rs, n0 - 1) / n0 * zpl : 0.0;
      for (int i = 0; i < ntx; ++i) {
        const double dx = ws.x[i] - ex, dy = ws.y[i] - ey;
        den += gamma_int(rs, ws.nkeep[i]) / ws.nkeep[i] *
               std::pow(dx * dx + dy * dy, -p.alpha / 2.0);
      }
      if (sig > gamma_e * den) return true;
    }
    return false;
  };
  return binomial(count_trials<EveWs>(trials, seed, threads, trial), trials);
}

McResult mc_mmwave_coverage(const MmWaveParams& p, McPattern pattern,
                            std::uint64_t trials, std::uint64_t seed,
                            int threads, double noise_power) {
  check_common(p.alpha, trials);
  if (!(p.lambda_t > 0.0) || !(p.R > 0.0) || p.Nt < 1 || p.M < 1 ||
      !(p.gamma > 0.0))
    throw std::invalid_argument("invalid mmwave parameters");
  const double r2max = p.R * p.R;
  const double mean_n = kPi * p.lambda_t * r2max;
  const double t = 1.0 / p.Nt;
  const double scale = 1.0 / p.M;
  const double half_alpha = p.alpha / 2.0;

  struct NoWs {};
  auto trial = [&](RandomStream& rs, NoWs&) {
    const long long n = rs.poisson(mean_n);
    if (n == 0) return false;  // no server in the ball
    // Minimum of n uniform squared radii, then the rest conditionally
    // uniform above it.
    const double min_r2 =
        r2max * (1.0 - std::pow(rs.uniform(), 1.0 / static_cast<double>(n)));
    const double s = rs.gamma(p.M, scale) * std::pow(min_r2, -half_alpha);
    double i_total = 0.0;
    for (long long i = 1; i < n; ++i) {
      const double r2 = min_r2 + rs.uniform_pos() * (r2max - min_r2);
      double g;
      if (pattern == McPattern::cosine) {
        if (rs.uniform() >= t) continue;  // off the main lobe
        const double l = std::cos(kPi * rs.uniform() / 2.0);
        g = l * l;
      } else {
        g = gain_actual(2.0 * rs.uniform() - 1.0, p.Nt, p.d_over_lambda);
      }
      i_total += g * rs.gamma(p.M, scale) * std::pow(r2, -half_alpha);
    }
    return s > p.gamma * (noise_power + i_total);
  };
  return binomial(count_trials<NoWs>(trials, seed, threads, trial), trials);
}

}  // namespace toepcov
