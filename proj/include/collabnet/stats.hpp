#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "collabnet/ingest.hpp"

namespace collabnet {

enum class Feature { ContributionPct, ICScore };

std::string_view to_string(Feature f) noexcept;

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;  // bins are [lower, upper) except the last, [lower, upper]
  std::size_t count = 0;
};

// Population statistics (divisor N) plus an equal-width histogram spanning
// [min, max] of the observed values.
struct FeatureSummary {
  Feature feature = Feature::ContributionPct;
  std::size_t count = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  double variance = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<HistogramBin> histogram;
};

// How the ic_score column is read for statistics.
enum class IcScoreBasis {
  // ic_score holds the project's total score; a member's share is
  // ic_score * contribution_pct / 100.
  ProjectTotal,
  // ic_score is already the member's own score.
  PerMember,
};

inline constexpr std::size_t kDefaultHistogramBins = 20;

// Values of `feature` in record order; records without an ic_score are
// skipped for Feature::ICScore.
std::vector<double> feature_values(const std::vector<ContributionRecord>& records,
                                   Feature feature,
                                   IcScoreBasis basis = IcScoreBasis::ProjectTotal);

// Throws InputError("feature absent from dataset") when no record carries the
// feature and ConfigError when n_bins is 0. Constant data yields one bin.
FeatureSummary summarize(const std::vector<ContributionRecord>& records, Feature feature,
                         std::size_t n_bins = kDefaultHistogramBins,
                         IcScoreBasis basis = IcScoreBasis::ProjectTotal);
FeatureSummary summarize_values(const std::vector<double>& values, Feature feature,
                                std::size_t n_bins = kDefaultHistogramBins);

// The feature with the wider observed range; ties go to ContributionPct.
// Advisory only: linkage is always computed from contribution percentages.
Feature select_linkage_feature(const FeatureSummary& contribution, const FeatureSummary& ic);

void write_histogram_csv(std::ostream& out, const FeatureSummary& summary);

// JSON object with feature, count, mean, std_dev, variance, min, max and the
// histogram as an array of {lower, upper, count}.
std::string summaries_to_json(const std::vector<FeatureSummary>& summaries,
                              const std::string& advisory = {});

}  // namespace collabnet
