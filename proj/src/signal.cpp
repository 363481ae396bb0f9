#include "sft/signal.hpp"

namespace sft {
namespace {

constexpr double kChirpCycles = 8.0;

// splitmix64; fixed algorithm so noise signals are bit-reproducible everywhere.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform_pm1(std::uint64_t& state) {
  const double u01 = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
  return 2.0 * u01 - 1.0;
}

}  // namespace

Signal make_test_signal(TestSignalKind kind, std::int64_t n, std::uint64_t seed,
                        BoundaryPolicy boundary) {
  if (n < 1) throw std::invalid_argument("make_test_signal: N must be >= 1");
  Eigen::ArrayXd x(n);
  switch (kind) {
    case TestSignalKind::Impulse:
      x.setZero();
      x[n / 2] = 1.0;
      break;
    case TestSignalKind::Constant:
      x.setOnes();
      break;
    case TestSignalKind::Chirp: {
      const double inv_n2 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
      for (std::int64_t i = 0; i < n; ++i) {
        const double phase = 2.0 * M_PI * kChirpCycles * static_cast<double>(i * i) * inv_n2;
        x[i] = std::sin(phase);
      }
      break;
    }
    case TestSignalKind::SeededNoise: {
      std::uint64_t state = seed;
      for (std::int64_t i = 0; i < n; ++i) x[i] = uniform_pm1(state);
      break;
    }
  }
  return Signal(std::move(x), boundary);
}

}  // namespace sft
