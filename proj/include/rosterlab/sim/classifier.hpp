#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rosterlab/core/types.hpp"

namespace rosterlab {

/// Operating point of a simulated absence classifier.
struct ClassifierProfile {
  double tpr = 0.0;         // alpha
  double rfpr = 0.0;        // probability a negative becomes a potential false positive
  double event_rate = 0.0;  // rho

  /// Throws std::invalid_argument unless every field lies in [0, 1].
  void validate() const;
};

struct ConfusionTallies {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  long tn = 0;

  long total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionTallies&) const = default;
};

struct PredictionOutcome {
  ReserveRequirement reserve;  // c*_d = predicted absences on day d
  AbsenceScenario scenario;    // simulated truth
  ConfusionTallies tallies;
  std::uint64_t seed = 0;
};

/// Draws the truth and the predictions in one pass: per employee-day the
/// employee is absent with probability rho; an absence is caught (TP) with
/// probability tpr, otherwise missed (FN); a non-absence is a potential
/// false positive with probability rfpr, which becomes an actual FP with
/// probability rho, otherwise a TN.
PredictionOutcome simulate_predictions(int employees, int days, const ClassifierProfile& profile,
                                       std::uint64_t seed);

/// Same classifier branches applied to a given truth (shared-truth mode).
PredictionOutcome predict_for_truth(const AbsenceScenario& truth,
                                    const ClassifierProfile& profile, std::uint64_t seed);

/// Ratios without a positive denominator are empty rather than NaN.
struct ConfusionMetrics {
  std::optional<double> tpr;
  std::optional<double> fpr;
  std::optional<double> specificity;
};

ConfusionMetrics confusion_metrics(const ConfusionTallies& tallies);

/// "undefined" for an empty ratio, the value otherwise.
std::string format_ratio(const std::optional<double>& ratio);

}  // namespace rosterlab
