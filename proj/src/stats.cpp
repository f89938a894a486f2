#include "collabnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "collabnet/error.hpp"
#include "json.hpp"
#include "text_format.hpp"

namespace collabnet {

std::string_view to_string(Feature f) noexcept {
  return f == Feature::ContributionPct ? "contribution_pct" : "ic_score";
}

std::vector<double> feature_values(const std::vector<ContributionRecord>& records,
                                   Feature feature, IcScoreBasis basis) {
  std::vector<double> values;
  values.reserve(records.size());
  for (const auto& r : records) {
    if (feature == Feature::ContributionPct) {
      values.push_back(r.contribution_pct);
    } else if (r.ic_score) {
      values.push_back(basis == IcScoreBasis::ProjectTotal
                           ? *r.ic_score * r.contribution_pct / 100.0
                           : *r.ic_score);
    }
  }
  return values;
}

FeatureSummary summarize_values(const std::vector<double>& values, Feature feature,
                                std::size_t n_bins) {
  if (n_bins == 0) throw ConfigError("histogram needs at least one bin");
  if (values.empty()) throw InputError("feature absent from dataset");

  FeatureSummary s;
  s.feature = feature;
  s.count = values.size();
  const auto n = static_cast<double>(values.size());

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();

  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.mean = sum / n;
  double sq = 0.0;
  for (double v : sorted) sq += (v - s.mean) * (v - s.mean);
  s.variance = sq / n;
  s.std_dev = std::sqrt(s.variance);

  if (s.min == s.max) {
    s.histogram.push_back({s.min, s.max, s.count});
    return s;
  }
  const double width = (s.max - s.min) / static_cast<double>(n_bins);
  s.histogram.resize(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) {
    s.histogram[i].lower = s.min + width * static_cast<double>(i);
    s.histogram[i].upper =
        i + 1 == n_bins ? s.max : s.min + width * static_cast<double>(i + 1);
  }
  for (double v : sorted) {
    auto bin = static_cast<std::size_t>(std::floor((v - s.min) / width));
    bin = std::min(bin, n_bins - 1);
    // Guard the floor() against rounding at bin edges.
    while (bin > 0 && v < s.histogram[bin].lower) --bin;
    while (bin + 1 < n_bins && v >= s.histogram[bin + 1].lower) ++bin;
    ++s.histogram[bin].count;
  }
  return s;
}

FeatureSummary summarize(const std::vector<ContributionRecord>& records, Feature feature,
                         std::size_t n_bins, IcScoreBasis basis) {
  return summarize_values(feature_values(records, feature, basis), feature, n_bins);
}

Feature select_linkage_feature(const FeatureSummary& contribution, const FeatureSummary& ic) {
  const double contribution_range = contribution.max - contribution.min;
  const double ic_range = ic.max - ic.min;
  return ic_range > contribution_range ? Feature::ICScore : Feature::ContributionPct;
}

void write_histogram_csv(std::ostream& out, const FeatureSummary& summary) {
  out << "bin_lower,bin_upper,count\n";
  for (const auto& b : summary.histogram) {
    out << detail::format_real(b.lower) << ',' << detail::format_real(b.upper) << ','
        << b.count << '\n';
  }
}

std::string summaries_to_json(const std::vector<FeatureSummary>& summaries,
                              const std::string& advisory) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& s : summaries) {
    nlohmann::ordered_json bins = nlohmann::ordered_json::array();
    for (const auto& b : s.histogram) {
      bins.push_back({{"lower", b.lower}, {"upper", b.upper}, {"count", b.count}});
    }
    list.push_back({{"feature", to_string(s.feature)},
                    {"count", s.count},
                    {"mean", s.mean},
                    {"std_dev", s.std_dev},
                    {"variance", s.variance},
                    {"min", s.min},
                    {"max", s.max},
                    {"histogram", std::move(bins)}});
  }
  doc["features"] = std::move(list);
  if (!advisory.empty()) doc["advisory"] = advisory;
  return doc.dump(2) + "\n";
}

}  // namespace collabnet
