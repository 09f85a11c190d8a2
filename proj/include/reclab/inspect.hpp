#pragma once

#include <string>
#include <vector>

#include "reclab/ratings.hpp"

namespace reclab {

struct HistogramBin {
  double lo = 0;
  double hi = 0;
  Index count = 0;
};

/// Equal-width bins spanning [min, max]; the last bin is closed. All values
/// land in one bin when min == max. Empty input gives no bins.
std::vector<HistogramBin> histogram(const std::vector<double>& values, Index bins);

struct DatasetSummary {
  Index users = 0;
  Index items = 0;
  Index ratings = 0;
  double density = 0;
  double mean_rating = 0;
};

struct InspectReport {
  DatasetSummary summary;
  /// name -> bins; names: ratings, ratings_centered, ratings_z_score,
  /// ratings_per_user, item_mean (real data), or ratings_per_user,
  /// users_per_item (0-1 data).
  std::vector<std::pair<std::string, std::vector<HistogramBin>>> histograms;
};

InspectReport inspect(const Dataset& data, Index bins = 20);

/// `distribution,bin_lo,bin_hi,count`.
std::string histograms_csv(const InspectReport& report);
/// One line, e.g. "1000 x 100 rating matrix with 30000 ratings (density 0.3)".
std::string summary_line(const InspectReport& report, DataKind kind);

}  // namespace reclab
