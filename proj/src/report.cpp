#include "reclab/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "reclab/io.hpp"

namespace reclab {

namespace {

void confusion_line(std::ostringstream& out, const std::string& label, const std::string& run,
                    const ConfusionRow& r) {
  out << label << ',' << run << ',' << r.n;
  for (const double v : {r.tp, r.fp, r.fn, r.tn, r.universe, r.precision, r.recall, r.tpr, r.fpr})
    out << ',' << format_number(v);
  out << '\n';
}

void errors_line(std::ostringstream& out, const std::string& label, const std::string& run,
                 const ErrorMetrics& e) {
  out << label << ',' << run << ',' << format_number(e.rmse) << ',' << format_number(e.mse) << ','
      << format_number(e.mae) << '\n';
}

}  // namespace

std::string confusion_csv(std::span<const EvaluationResult> results, bool average) {
  std::ostringstream out;
  out << "algorithm,run,n,TP,FP,FN,TN,N,precision,recall,TPR,FPR\n";
  for (const auto& result : results) {
    if (average) {
      for (const auto& row : result.avg_confusion()) confusion_line(out, result.label, "avg", row);
      continue;
    }
    for (std::size_t run = 0; run < result.confusion.size(); ++run)
      for (const auto& row : result.confusion[run])
        confusion_line(out, result.label, std::to_string(run + 1), row);
  }
  return out.str();
}

std::string errors_csv(std::span<const EvaluationResult> results, bool average) {
  std::ostringstream out;
  out << "algorithm,run,RMSE,MSE,MAE\n";
  for (const auto& result : results) {
    if (average) {
      errors_line(out, result.label, "avg", result.avg_errors());
      continue;
    }
    for (std::size_t run = 0; run < result.errors.size(); ++run)
      errors_line(out, result.label, std::to_string(run + 1), result.errors[run]);
  }
  return out.str();
}

std::string error_summary_csv(std::span<const EvaluationResult> results) {
  std::ostringstream out;
  out << "algorithm,metric,mean,sd,min,max\n";
  for (const auto& result : results) {
    const auto avg = result.avg_errors();
    const std::pair<const char*, double ErrorMetrics::*> metrics[] = {
        {"RMSE", &ErrorMetrics::rmse}, {"MSE", &ErrorMetrics::mse}, {"MAE", &ErrorMetrics::mae}};
    for (const auto& [name, field] : metrics) {
      const double mean = avg.*field;
      double ss = 0.0, lo = INFINITY, hi = -INFINITY;
      for (const auto& e : result.errors) {
        ss += (e.*field - mean) * (e.*field - mean);
        lo = std::min(lo, e.*field);
        hi = std::max(hi, e.*field);
      }
      const double sd = result.errors.size() > 1
                            ? std::sqrt(ss / static_cast<double>(result.errors.size() - 1))
                            : NAN;
      out << result.label << ',' << name << ',' << format_number(mean) << ',' << format_number(sd)
          << ',' << format_number(lo) << ',' << format_number(hi) << '\n';
    }
  }
  return out.str();
}

std::string curve_csv(std::span<const EvaluationResult> results, CurveKind kind) {
  std::ostringstream out;
  out << (kind == CurveKind::roc ? "algorithm,n,FPR,TPR\n" : "algorithm,n,recall,precision\n");
  for (const auto& result : results)
    for (const auto& p : curve_points(result, kind))
      out << result.label << ',' << p.n << ',' << format_number(p.x) << ',' << format_number(p.y)
          << '\n';
  return out.str();
}

std::string roc_svg(std::span<const EvaluationResult> results) {
  constexpr double width = 480, height = 400, margin = 50;
  constexpr const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                    "#66a61e", "#e6ab02", "#a6761d", "#666666"};
  std::vector<std::vector<CurvePoint>> curves;
  double x_max = 0.0, y_max = 0.0;
  for (const auto& result : results) {
    curves.push_back(curve_points(result, CurveKind::roc));
    for (const auto& p : curves.back()) {
      if (std::isfinite(p.x)) x_max = std::max(x_max, p.x);
      if (std::isfinite(p.y)) y_max = std::max(y_max, p.y);
    }
  }
  x_max = x_max > 0.0 ? x_max * 1.05 : 1.0;
  y_max = y_max > 0.0 ? y_max * 1.05 : 1.0;
  const auto px = [&](double x) { return margin + x / x_max * (width - 2 * margin); };
  const auto py = [&](double y) { return height - margin - y / y_max * (height - 2 * margin); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\">FPR</text>\n";
  out << "<text x=\"14\" y=\"" << height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << height / 2 << ")\">TPR</text>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = colors[c % std::size(colors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : curves[c])
      if (std::isfinite(p.x) && std::isfinite(p.y))
        out << format_number(px(p.x)) << ',' << format_number(py(p.y)) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << width - margin - 110 << "\" y=\"" << margin + 16 * static_cast<double>(c)
        << "\" fill=\"" << color << "\">" << results[c].label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace reclab
