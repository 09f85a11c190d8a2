#include "reclab/inspect.hpp"

#include <algorithm>
#include <sstream>

#include "reclab/io.hpp"

namespace reclab {

namespace {

std::vector<double> all_values(const RatingMatrix& m) {
  const auto& s = m.storage();
  return {s.valuePtr(), s.valuePtr() + s.nonZeros()};
}

}  // namespace

std::vector<HistogramBin> histogram(const std::vector<double>& values, Index bins) {
  if (bins < 1) throw InvalidArgument("histogram needs at least one bin");
  if (values.empty()) return {};
  const auto [lo_it, hi_it] = std::ranges::minmax_element(values);
  const double lo = *lo_it, hi = *hi_it;
  if (lo == hi) return {{lo, hi, static_cast<Index>(values.size())}};
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  for (Index b = 0; b < bins; ++b) {
    out[static_cast<std::size_t>(b)].lo = lo + width * static_cast<double>(b);
    out[static_cast<std::size_t>(b)].hi = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (const double v : values) {
    auto b = static_cast<Index>((v - lo) / width);
    b = std::clamp<Index>(b, 0, bins - 1);
    ++out[static_cast<std::size_t>(b)].count;
  }
  return out;
}

InspectReport inspect(const Dataset& data, Index bins) {
  InspectReport r;
  r.summary.users = n_users(data);
  r.summary.items = n_items(data);
  r.summary.ratings = n_ratings(data);
  r.summary.density = static_cast<double>(r.summary.ratings) /
                      (static_cast<double>(r.summary.users) * static_cast<double>(r.summary.items));

  std::vector<double> per_user;
  for (Index u = 0; u < n_users(data); ++u) per_user.push_back(static_cast<double>(row_count(data, u)));

  if (const auto* m = std::get_if<RatingMatrix>(&data)) {
    const auto raw = all_values(*m);
    double sum = 0.0;
    for (const double v : raw) sum += v;
    r.summary.mean_rating = raw.empty() ? 0.0 : sum / static_cast<double>(raw.size());
    std::vector<double> item_means;
    const auto cols = col_stats(*m);
    for (Index i = 0; i < cols.means.size(); ++i)
      if (cols.has_mean(i)) item_means.push_back(cols.means(i));
    r.histograms.emplace_back("ratings", histogram(raw, bins));
    r.histograms.emplace_back("ratings_centered",
                              histogram(all_values(normalize(*m, NormalizationMethod::center).first), bins));
    r.histograms.emplace_back("ratings_z_score",
                              histogram(all_values(normalize(*m, NormalizationMethod::z_score).first), bins));
    r.histograms.emplace_back("ratings_per_user", histogram(per_user, bins));
    r.histograms.emplace_back("item_mean", histogram(item_means, bins));
  } else {
    r.summary.mean_rating = 1.0;
    std::vector<double> per_item;
    const auto cols = col_stats(std::get<BinaryRatingMatrix>(data));
    for (Index i = 0; i < cols.counts.size(); ++i) per_item.push_back(static_cast<double>(cols.counts(i)));
    r.histograms.emplace_back("ratings_per_user", histogram(per_user, bins));
    r.histograms.emplace_back("users_per_item", histogram(per_item, bins));
  }
  return r;
}

std::string histograms_csv(const InspectReport& report) {
  std::ostringstream out;
  out << "distribution,bin_lo,bin_hi,count\n";
  for (const auto& [name, bins] : report.histograms)
    for (const auto& b : bins)
      out << name << ',' << format_number(b.lo) << ',' << format_number(b.hi) << ',' << b.count << '\n';
  return out.str();
}

std::string summary_line(const InspectReport& report, DataKind kind) {
  std::ostringstream out;
  out << report.summary.users << " x " << report.summary.items << " rating matrix of class '"
      << matrix_class_name(kind) << "' with " << report.summary.ratings << " ratings (density "
      << format_number(report.summary.density) << ")";
  return out.str();
}

}  // namespace reclab
