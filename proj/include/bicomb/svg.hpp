#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace bicomb {

struct CurveSpec {
  std::vector<std::array<double, 2>> points;  // (x, y), drawn in order
  std::string title;
  std::string x_label;
  std::string y_label;
  // Dashed horizontal reference line (a bound), drawn when finite.
  double hline = std::numeric_limits<double>::quiet_NaN();
};

// Self-contained static SVG documents; no renderer dependency.
std::string svg_curve(const CurveSpec& spec);
std::string svg_histogram(const nlohmann::json& histogram,
                          const std::string& title);

// Extracts every plottable payload from a parsed report: slack histograms,
// residual-vs-t curves from shadowing witnesses, and the T-vs-delta curve
// of a constants sweep. Returns (file suffix, svg document) pairs; empty
// when the report carries nothing to draw. Throws on malformed input.
std::vector<std::pair<std::string, std::string>> report_plots(
    const nlohmann::json& report);

}  // namespace bicomb
