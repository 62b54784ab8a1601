#pragma once

#include <vector>

namespace toepcov {

// Ad hoc network of multi-antenna transmitters that null their interference
// toward receivers requesting protection within the coordination range d0,
// spending leftover antenna dimensions on artificial noise.
struct SecurityParams {
  double lambda_t = 1e-2;  // legitimate transmitter density (m^-2)
  double lambda_e = 1e-3;  // eavesdropper density (m^-2)
  int Nt = 4;              // antennas per transmitter
  double r0 = 1.0;         // transmitter-receiver link distance (m)
  double d0 = 0.0;         // coordination range (m)
  double alpha = 4.0;      // path-loss exponent
};

// Distribution of the residual stream count n = Nt - min(K, Nt-1) of a
// transmitter receiving K ~ Poisson(pi d0^2 lambda_t) nulling requests:
// truncated Poisson mass for n >= 2, remainder at n = 1.
double p_requests(int n, const SecurityParams& p);

// Entry of the connection-outage exponent matrix for a receiver whose own
// transmitter kept nx0 streams:
//   q_k = sum_n p_N(n) [Gamma(n+k)/(Gamma(n)Gamma(k+1))] [delta/(delta-k)]
//         x_n^k 2F1(k-delta, k+n; k+1-delta; -x_n),
// x_n = (r0/d0)^alpha gamma_l nx0 / n.  Valid for k >= 0 (at k = 0 the
// delta/(delta-k) factor is 1); requires d0 > 0.
double security_qk(int k, int nx0, const SecurityParams& p, double gamma_l);

// Connection outage of the typical link under cooperative nulling:
//   p_co = 1 - sum_{n0} p_N(n0) * l1(exp{-pi lambda_t d0^2 [Q_{n0} - I]}).
// d0 = 0 degenerates to the closed-form no-nulling evaluation.
double connection_outage(const SecurityParams& p, double gamma_l);

// Upper bound on the secrecy outage probability (any eavesdropper of a PPP
// lambda_e attaining SIR above gamma_e).
double secrecy_outage_ub(const SecurityParams& p, double gamma_e);

struct SecrecyCapacityResult {
  double capacity = 0.0;   // (1-mu) lambda_t [log2((1+g_l)/(1+g_e))]^+
  double gamma_l_th = 0.0;
  double gamma_e_th = 0.0;
  bool feasible = true;    // false when no gamma_e meets the epsilon target
};

// Solve p_co(gamma_l) = mu and p_so_ub(gamma_e) = eps, then evaluate the
// secrecy transmission capacity at coordination range d0.
SecrecyCapacityResult secrecy_capacity(const SecurityParams& p, double d0,
                                       double mu, double eps);

struct D0Optimum {
  double d0 = 0.0;
  double capacity = 0.0;
};

// Grid argmax of secrecy capacity over d0 (ties resolved to the smallest
// d0), refined by golden-section search between the neighbors of the argmax.
D0Optimum optimize_d0(const SecurityParams& p, double mu, double eps,
                      const std::vector<double>& grid);

}  // namespace toepcov
