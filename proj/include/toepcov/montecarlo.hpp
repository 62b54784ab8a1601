#pragma once

#include <cstdint>
#include <vector>

#include "toepcov/framework.hpp"
#include "toepcov/hetnet.hpp"
#include "toepcov/mmwave.hpp"
#include "toepcov/security.hpp"

namespace toepcov {

// Binomial estimate from independent trials.  Reproducible: each trial
// draws from a stream derived only from (seed, trial index), so the result
// is bit-identical for any thread count.
struct McResult {
  double estimate = 0.0;
  double std_err = 0.0;
  std::uint64_t trials = 0;
};

// Coverage of a framework scenario by direct simulation of the point
// process, fading and path loss.  Full-plane interferer classes are
// truncated where the neglected far-field mass is 1e-4 of the in-range
// interference.  LOS-ball serving is conditional on a server existing,
// matching the analytic route.
McResult mc_coverage_general(const Scenario& scn, double gamma,
                             std::uint64_t trials, std::uint64_t seed,
                             int threads = 1);

// Same, evaluated on a (signal shape) x (threshold) grid with common random
// numbers: one interference field per trial serves every cell, and signal
// gains for nested shapes share their exponential stages.
std::vector<std::vector<McResult>> mc_coverage_grid(
    const Scenario& scn, const std::vector<int>& signal_shapes,
    const std::vector<double>& gammas, std::uint64_t trials,
    std::uint64_t seed, int threads = 1);

// K-tier downlink with biased max-power association, simulated through the
// exact nearest-point decomposition per tier.
McResult mc_hetnet_coverage(const std::vector<TierParams>& tiers, double gamma,
                            double alpha, std::uint64_t trials,
                            std::uint64_t seed, int threads = 1);

// Connection outage of the typical link under the full request protocol:
// every receiver asks the transmitters within d0 for a null, transmitters
// grant at most Nt-1 requests (uniformly at random among applicants), and
// a transmitter keeps Nt - min(requests, Nt-1) beamforming streams.
McResult mc_connection_outage(const SecurityParams& p, double gamma_l,
                              std::uint64_t trials, std::uint64_t seed,
                              int threads = 1);

// Secrecy outage: probability that some eavesdropper of a PPP attains SIR
// above gamma_e against the beam intended for the typical receiver.  The
// eavesdropper disk is truncated where the residual outage mass is below
// 1e-4 of the estimate scale.
McResult mc_secrecy_outage(const SecurityParams& p, double gamma_e,
                           std::uint64_t trials, std::uint64_t seed,
                           int threads = 1);

enum class McPattern { cosine, actual };

// Unconditional LOS-ball coverage with analog beamforming; interferer beam
// offsets are uniform, the pattern is either the cosine approximation or
// the full array factor.  noise_power adds a thermal term to the SINR
// denominator.
McResult mc_mmwave_coverage(const MmWaveParams& p, McPattern pattern,
                            std::uint64_t trials, std::uint64_t seed,
                            int threads = 1, double noise_power = 0.0);

}  // namespace toepcov
