#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "brainheart/features/hrv.hpp"
#include "brainheart/util/error.hpp"

namespace bhx {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string svg_open(double w, double h) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" viewBox=\"0 0 {0:.0f} {1:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      w, h);
}

}  // namespace

std::string confusion_svg(const bh::ml::MetricsReport& report, const std::string& title) {
  const std::size_t k = report.class_names.size();
  const double cell = 64.0, left = 110.0, top = 60.0;
  const double w = left + cell * static_cast<double>(k) + 20.0;
  const double h = top + cell * static_cast<double>(k) + 50.0;
  std::string s = svg_open(w, h);
  s += fmt::format("<text x=\"{:.1f}\" y=\"20\" font-size=\"14\">{}</text>\n", left, escape(title));
  s += fmt::format("<text x=\"{:.1f}\" y=\"40\">accuracy {:.3f}, n = {}</text>\n", left, report.accuracy, report.total);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t row_total = 0;
    for (const auto c : report.confusion[i]) row_total += c;
    const double y = top + cell * static_cast<double>(i);
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{}</text>\n", left - 6, y + cell / 2 + 4,
                     escape(report.class_names[i]));
    for (std::size_t j = 0; j < k; ++j) {
      const double x = left + cell * static_cast<double>(j);
      const double frac = row_total ? static_cast<double>(report.confusion[i][j]) / static_cast<double>(row_total) : 0.0;
      const int shade = static_cast<int>(std::lround(255.0 * (1.0 - 0.8 * frac)));
      s += fmt::format(
          "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"rgb({},{},255)\" stroke=\"#444\"/>\n",
          x, y, cell, cell, shade, shade);
      s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" fill=\"{}\">{}</text>\n", x + cell / 2,
                       y + cell / 2 + 4, frac > 0.6 ? "white" : "black", report.confusion[i][j]);
    }
  }
  const double by = top + cell * static_cast<double>(k);
  for (std::size_t j = 0; j < k; ++j) {
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
                     left + cell * (static_cast<double>(j) + 0.5), by + 16, escape(report.class_names[j]));
  }
  s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">predicted</text>\n",
                   left + cell * static_cast<double>(k) / 2, by + 36);
  s += fmt::format("<text x=\"14\" y=\"{:.1f}\" transform=\"rotate(-90 14 {:.1f})\" text-anchor=\"middle\">true</text>\n",
                   top + cell * static_cast<double>(k) / 2, top + cell * static_cast<double>(k) / 2);
  s += "</svg>\n";
  return s;
}

std::string poincare_svg(std::span<const double> rr, const std::string& title) {
  if (rr.size() < 3) throw bh::DataError(fmt::format("{}: too few intervals for a Poincaré plot", title));
  const auto f = bh::hrv_from_intervals(rr);
  const auto [lo_it, hi_it] = std::minmax_element(rr.begin(), rr.end());
  double lo = *lo_it, hi = *hi_it;
  const double pad = std::max(10.0, 0.1 * (hi - lo));
  lo -= pad;
  hi += pad;
  const double size = 360.0, margin = 50.0;
  const auto px = [&](double v) { return margin + (v - lo) / (hi - lo) * size; };
  const auto py = [&](double v) { return margin + size - (v - lo) / (hi - lo) * size; };

  std::string s = svg_open(size + 2 * margin, size + 2 * margin);
  s += fmt::format("<text x=\"{:.1f}\" y=\"20\" font-size=\"14\">{}</text>\n", margin, escape(title));
  s += fmt::format("<text x=\"{:.1f}\" y=\"38\">SD1 {:.2f} ms, SD2 {:.2f} ms</text>\n", margin, f.sd1, f.sd2);
  s += fmt::format("<rect x=\"{0:.1f}\" y=\"{0:.1f}\" width=\"{1:.1f}\" height=\"{1:.1f}\" fill=\"none\" stroke=\"#444\"/>\n",
                   margin, size);
  s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n",
                   px(lo), py(lo), px(hi), py(hi));
  for (std::size_t i = 0; i + 1 < rr.size(); ++i) {
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"#1f5fa8\" fill-opacity=\"0.6\"/>\n", px(rr[i]),
                     py(rr[i + 1]));
  }
  // Ellipse axes: SD2 along the identity line, SD1 across it.
  const double scale = size / (hi - lo);
  s += fmt::format(
      "<ellipse cx=\"{:.2f}\" cy=\"{:.2f}\" rx=\"{:.2f}\" ry=\"{:.2f}\" transform=\"rotate(-45 {:.2f} {:.2f})\" "
      "fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n",
      px(f.mean_nn), py(f.mean_nn), f.sd2 * scale, f.sd1 * scale, px(f.mean_nn), py(f.mean_nn));
  s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">RR(n) [ms]</text>\n", margin + size / 2,
                   margin + size + 30);
  s += fmt::format("<text x=\"16\" y=\"{0:.1f}\" transform=\"rotate(-90 16 {0:.1f})\" text-anchor=\"middle\">RR(n+1) [ms]</text>\n",
                   margin + size / 2);
  s += "</svg>\n";
  return s;
}

std::string table_markdown(const std::string& summary_text, const std::string& anova_text) {
  nlohmann::json summary, anova;
  try {
    summary = nlohmann::json::parse(summary_text);
    anova = nlohmann::json::parse(anova_text);
  } catch (const nlohmann::json::exception& e) {
    throw bh::DataError(fmt::format("report bundle: {}", e.what()));
  }
  if (!summary.contains("columns") || !summary.contains("cells")) {
    throw bh::DataError("report bundle: summary.json lacks columns/cells");
  }

  std::map<std::pair<std::string, std::string>, const nlohmann::json*> by_cell;
  for (const auto& c : summary["cells"]) {
    by_cell[{c["feature_set"].get<std::string>(), c["classifier"].get<std::string>() + "/" + c["task"].get<std::string>()}] = &c;
  }

  std::string s = "# Classification accuracy\n\n";
  s += fmt::format("Seed {}, {} folds{}{}{}.\n\n", summary.value("seed", 0), summary.value("folds", 0),
                   summary.value("subject_wise", false) ? ", subject-wise" : "",
                   summary.value("smote", false) ? ", SMOTE in training folds" : "",
                   summary.value("permuted_labels", false) ? ", labels permuted (null control)" : "");
  s += "| Feature set |";
  std::string rule = "|---|";
  for (const auto& col : summary["columns"]) {
    s += fmt::format(" {} |", col.get<std::string>());
    rule += "---|";
  }
  s += "\n" + rule + "\n";
  for (const auto& row : summary["table"]) {
    const auto set = row["feature_set"].get<std::string>();
    s += fmt::format("| {} |", set);
    for (const auto& col : summary["columns"]) {
      const auto it = by_cell.find({set, col.get<std::string>()});
      if (it == by_cell.end()) {
        s += " n/a |";
      } else {
        const auto& cell = *it->second;
        const auto fixed3 = [](const nlohmann::json& v) {
          return v.is_number() ? fmt::format("{:.3f}", v.get<double>()) : std::string("n/a");
        };
        s += fmt::format(" {} ± {} |", fixed3(cell["accuracy_mean"]), fixed3(cell["accuracy_sd"]));
      }
    }
    s += "\n";
  }

  s += "\n## ANOVA over fold accuracies\n\n";
  const auto comparisons = anova.value("comparisons", nlohmann::json::array());
  if (comparisons.empty()) {
    s += "No comparisons (fewer than two groups with two or more folds).\n";
  } else {
    s += "| Scope | Task | Fixed | Groups | F | p |\n|---|---|---|---|---|---|\n";
    for (const auto& e : comparisons) {
      std::string groups;
      for (const auto& g : e["groups"]) groups += (groups.empty() ? "" : ", ") + g.get<std::string>();
      const auto num = [](const nlohmann::json& v) {
        return v.is_number() ? fmt::format("{:.4g}", v.get<double>()) : std::string(v.is_null() ? "n/a" : v.dump());
      };
      s += fmt::format("| {} | {} | {} | {} | {} | {} |\n", e["scope"].get<std::string>(), e["task"].get<std::string>(),
                       e["fixed"].get<std::string>(), groups, num(e["f_stat"]), num(e["p_value"]));
    }
  }
  return s;
}

}  // namespace bhx
