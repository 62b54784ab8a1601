#pragma once

#include <cstdint>

namespace toepcov {

// xoshiro256+ stream seeded through splitmix64.  for_trial derives a
// decorrelated stream per (seed, trial) pair, so estimates do not depend on
// how trials are partitioned across threads.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) { reseed(seed, 0); }
  static RandomStream for_trial(std::uint64_t seed, std::uint64_t trial) {
    RandomStream r(0);
    r.reseed(seed, trial);
    return r;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = s_[0] + s_[3];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = (s_[3] << 45) | (s_[3] >> 19);
    return result;
  }

  // [0, 1) and (0, 1]; the latter is safe under log().
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }
  double uniform_pos() { return ((next_u64() >> 11) + 1) * 0x1.0p-53; }

  void fill_uniform_pos(double* out, int n) {
    for (int i = 0; i < n; ++i) out[i] = uniform_pos();
  }

  double exp1();
  double normal();
  // Marsaglia-Tsang for shape >= 1 with the u^{1/shape} boost below 1;
  // integer shapes up to 8 run as sums of exponentials.
  double gamma(double shape, double scale = 1.0);
  // Inversion by product below mean 10, Hormann's transformed rejection
  // (PTRD) above.
  long long poisson(double mean);

 private:
  void reseed(std::uint64_t seed, std::uint64_t trial);
  std::uint64_t s_[4];
};

}  // namespace toepcov
