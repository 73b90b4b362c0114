#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace psigraph {

// Deterministic random stream. std::mt19937_64 is fully specified by the
// standard and the derived doubles below use only IEEE arithmetic, so streams
// are bit-reproducible across platforms (std::normal_distribution is not,
// which is why Box-Muller is done by hand).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Sub-stream discipline: every independent consumer derives its own stream
  // from (seed, stream_id) so results do not depend on evaluation order.
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{seed, stream};
    eng_.seed(seq);
  }

  std::uint64_t bits() { return eng_(); }

  // Uniform in (0,1), never exactly 0 or 1.
  double uniform() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
  }

  // Uniform integer in [0, n).
  std::uint64_t integer(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Complex Gaussian with independent N(0,1) real and imaginary parts.
  std::complex<double> cnormal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace psigraph
