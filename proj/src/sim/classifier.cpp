#include "rosterlab/sim/classifier.hpp"

#include <sstream>
#include <stdexcept>

#include "rosterlab/util/rng.hpp"

namespace rosterlab {

void ClassifierProfile::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
  };
  check(tpr, "tpr");
  check(rfpr, "rfpr");
  check(event_rate, "event_rate");
}

namespace {

// Classifier branches for one employee-day; returns whether the day is
// predicted absent.
bool classify(bool absent, const ClassifierProfile& p, RngStream& rng, ConfusionTallies& t) {
  if (absent) {
    if (rng.bernoulli(p.tpr)) {
      ++t.tp;
      return true;
    }
    ++t.fn;
    return false;
  }
  if (rng.bernoulli(p.rfpr) && rng.bernoulli(p.event_rate)) {
    ++t.fp;
    return true;
  }
  ++t.tn;
  return false;
}

}  // namespace

PredictionOutcome simulate_predictions(int employees, int days, const ClassifierProfile& profile,
                                       std::uint64_t seed) {
  profile.validate();
  PredictionOutcome out;
  out.seed = seed;
  out.scenario = AbsenceScenario(employees, days, seed);
  out.reserve = ReserveRequirement::zeros(days);
  RngStream rng(seed);
  for (int n = 0; n < employees; ++n) {
    for (int d = 0; d < days; ++d) {
      const bool absent = rng.bernoulli(profile.event_rate);
      out.scenario.set_absent(n, d, absent);
      if (classify(absent, profile, rng, out.tallies)) ++out.reserve.per_day[d];
    }
  }
  return out;
}

PredictionOutcome predict_for_truth(const AbsenceScenario& truth,
                                    const ClassifierProfile& profile, std::uint64_t seed) {
  profile.validate();
  PredictionOutcome out;
  out.seed = seed;
  out.scenario = truth;
  out.reserve = ReserveRequirement::zeros(truth.num_days());
  RngStream rng(seed);
  for (int n = 0; n < truth.num_employees(); ++n) {
    for (int d = 0; d < truth.num_days(); ++d) {
      if (classify(truth.absent(n, d), profile, rng, out.tallies)) ++out.reserve.per_day[d];
    }
  }
  return out;
}

ConfusionMetrics confusion_metrics(const ConfusionTallies& t) {
  if (t.tp < 0 || t.fp < 0 || t.fn < 0 || t.tn < 0) {
    throw std::invalid_argument("confusion tallies must be non-negative");
  }
  ConfusionMetrics m;
  if (t.tp + t.fn > 0) m.tpr = static_cast<double>(t.tp) / static_cast<double>(t.tp + t.fn);
  if (t.tn + t.fp > 0) {
    m.specificity = static_cast<double>(t.tn) / static_cast<double>(t.tn + t.fp);
    m.fpr = 1.0 - *m.specificity;
  }
  return m;
}

std::string format_ratio(const std::optional<double>& ratio) {
  if (!ratio) return "undefined";
  std::ostringstream os;
  os << *ratio;
  return os.str();
}

}  // namespace rosterlab
