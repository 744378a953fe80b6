#include "rosterlab/sim/scenarios.hpp"

#include <stdexcept>

#include "rosterlab/util/rng.hpp"

namespace rosterlab {

AbsenceScenario generate_scenario(int employees, int days, double rho, std::uint64_t seed,
                                  int index) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0, 1]");
  const auto stream_seed =
      derive_seed(seed, SeedDomain::kEvaluation, {static_cast<std::uint64_t>(index)});
  AbsenceScenario s(employees, days, stream_seed);
  RngStream rng(stream_seed);
  for (int n = 0; n < employees; ++n) {
    for (int d = 0; d < days; ++d) s.set_absent(n, d, rng.bernoulli(rho));
  }
  return s;
}

std::vector<AbsenceScenario> generate_scenarios(int employees, int days, double rho, int count,
                                                std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("scenario count must be at least 1");
  std::vector<AbsenceScenario> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(generate_scenario(employees, days, rho, seed, i));
  return out;
}

ReserveRequirement baseline_policy(int k, int days) {
  if (k < 0) throw std::invalid_argument("baseline k must be non-negative");
  return ReserveRequirement{std::vector<int>(days, k)};
}

}  // namespace rosterlab
