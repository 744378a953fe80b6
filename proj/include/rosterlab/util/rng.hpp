#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rosterlab {

// Seed domains keep independent random streams apart. Evaluation scenarios
// and prediction truth must never share a domain.
enum class SeedDomain : std::uint64_t {
  kGenerator = 0x67656e,
  kPredictionTruth = 0x7472757468,
  kClassifier = 0x636c6173,
  kEvaluation = 0x6576616c,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Hash of (master seed, domain, path...) used to seed one stream. Streams
/// derived from distinct paths are independent for all practical purposes,
/// which makes parallel execution order-independent.
inline std::uint64_t derive_seed(std::uint64_t master, SeedDomain domain,
                                 std::initializer_list<std::uint64_t> path = {}) {
  std::uint64_t h = splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(domain)));
  for (std::uint64_t p : path) {
    h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  }
  return h;
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer on [lo, hi].
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rosterlab
