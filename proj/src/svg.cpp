#include "bicomb/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bicomb {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 44.0;
constexpr double kBottom = 56.0;

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double map(double v, double px0, double px1) const {
    return px0 + (v - lo) / (hi - lo) * (px1 - px0);
  }
};

Axis fit(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi)))
    throw std::invalid_argument("plot data contains non-finite values");
  if (hi <= lo) {
    double pad = std::max(1.0, std::abs(lo));
    return {lo - pad * 0.5, lo + pad * 0.5};
  }
  double pad = (hi - lo) * 0.06;
  return {lo - pad, hi + pad};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

void emit_frame(std::ostringstream& o, const Axis& xa, const Axis& ya,
                const std::string& title, const std::string& x_label,
                const std::string& y_label) {
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
    << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
    << kHeight << "\">\n";
  o << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"15\">"
    << escape(title) << "</text>\n";
  double x0 = kLeft, x1 = kWidth - kRight;
  double y0 = kHeight - kBottom, y1 = kTop;
  o << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1
    << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0
    << "\" y2=\"" << y1 << "\" stroke=\"black\"/>\n";
  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    double fx = xa.lo + (xa.hi - xa.lo) * i / ticks;
    double px = xa.map(fx, x0, x1);
    o << "<line x1=\"" << px << "\" y1=\"" << y0 << "\" x2=\"" << px
      << "\" y2=\"" << y0 + 5 << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << px << "\" y=\"" << y0 + 20
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"11\">"
      << num(fx) << "</text>\n";
    double fy = ya.lo + (ya.hi - ya.lo) * i / ticks;
    double py = ya.map(fy, y0, y1);
    o << "<line x1=\"" << x0 - 5 << "\" y1=\"" << py << "\" x2=\"" << x0
      << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << x0 - 8 << "\" y=\"" << py + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << num(fy) << "</text>\n";
  }
  o << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"12\">"
    << escape(x_label) << "</text>\n";
  o << "<text x=\"16\" y=\"" << (y0 + y1) / 2
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
       "transform=\"rotate(-90 16 "
    << (y0 + y1) / 2 << ")\">" << escape(y_label) << "</text>\n";
}

}  // namespace

std::string svg_curve(const CurveSpec& spec) {
  if (spec.points.empty())
    throw std::invalid_argument("svg_curve: no points");
  double xlo = spec.points[0][0], xhi = xlo;
  double ylo = spec.points[0][1], yhi = ylo;
  for (const auto& p : spec.points) {
    xlo = std::min(xlo, p[0]);
    xhi = std::max(xhi, p[0]);
    ylo = std::min(ylo, p[1]);
    yhi = std::max(yhi, p[1]);
  }
  if (std::isfinite(spec.hline)) {
    ylo = std::min(ylo, spec.hline);
    yhi = std::max(yhi, spec.hline);
  }
  Axis xa = fit(xlo, xhi);
  Axis ya = fit(ylo, yhi);
  double x0 = kLeft, x1 = kWidth - kRight;
  double y0 = kHeight - kBottom, y1 = kTop;
  std::ostringstream o;
  emit_frame(o, xa, ya, spec.title, spec.x_label, spec.y_label);
  if (std::isfinite(spec.hline)) {
    double py = ya.map(spec.hline, y0, y1);
    o << "<line x1=\"" << x0 << "\" y1=\"" << py << "\" x2=\"" << x1
      << "\" y2=\"" << py
      << "\" stroke=\"#b03030\" stroke-dasharray=\"6 4\"/>\n";
  }
  o << "<polyline fill=\"none\" stroke=\"#2060a8\" stroke-width=\"1.5\" "
       "points=\"";
  for (const auto& p : spec.points)
    o << xa.map(p[0], x0, x1) << "," << ya.map(p[1], y0, y1) << " ";
  o << "\"/>\n";
  for (const auto& p : spec.points)
    o << "<circle cx=\"" << xa.map(p[0], x0, x1) << "\" cy=\""
      << ya.map(p[1], y0, y1) << "\" r=\"2.2\" fill=\"#2060a8\"/>\n";
  o << "</svg>\n";
  return o.str();
}

std::string svg_histogram(const nlohmann::json& histogram,
                          const std::string& title) {
  if (!histogram.is_object() || !histogram.contains("counts") ||
      !histogram.contains("lo") || !histogram.contains("hi"))
    throw std::invalid_argument("svg_histogram: malformed histogram");
  std::vector<std::uint64_t> counts =
      histogram.at("counts").get<std::vector<std::uint64_t>>();
  if (counts.empty())
    throw std::invalid_argument("svg_histogram: empty histogram");
  double lo = histogram.at("lo").get<double>();
  double hi = histogram.at("hi").get<double>();
  std::uint64_t peak = 1;
  for (std::uint64_t c : counts) peak = std::max(peak, c);
  Axis xa = fit(lo, hi);
  Axis ya{0.0, static_cast<double>(peak) * 1.06};
  double x0 = kLeft, x1 = kWidth - kRight;
  double y0 = kHeight - kBottom, y1 = kTop;
  std::ostringstream o;
  emit_frame(o, xa, ya, title, "slack", "count");
  double bucket = hi > lo ? (hi - lo) / counts.size() : 1.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    double bx0 = xa.map(lo + bucket * i, x0, x1);
    double bx1 = xa.map(lo + bucket * (i + 1), x0, x1);
    double by = ya.map(static_cast<double>(counts[i]), y0, y1);
    o << "<rect x=\"" << bx0 << "\" y=\"" << by << "\" width=\""
      << std::max(0.5, bx1 - bx0 - 0.5) << "\" height=\"" << y0 - by
      << "\" fill=\"#4878a8\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::vector<std::pair<std::string, std::string>> report_plots(
    const nlohmann::json& report) {
  if (!report.is_object() || !report.contains("check"))
    throw std::invalid_argument("report is not a check report");
  std::string check = report.at("check").get<std::string>();
  std::string space =
      report.contains("space") ? report.at("space").get<std::string>() : "";
  std::string title = space.empty() ? check : check + " on " + space;
  std::vector<std::pair<std::string, std::string>> out;
  const nlohmann::json& details =
      report.contains("details") ? report.at("details") : nlohmann::json();
  if (details.is_object() && details.contains("histogram") &&
      details.at("histogram").is_object() &&
      details.at("histogram").contains("counts")) {
    out.emplace_back("histogram",
                     svg_histogram(details.at("histogram"), title));
  }
  auto residual_curve = [&](const nlohmann::json& node) {
    if (!node.is_object() || !node.contains("curve")) return;
    const nlohmann::json& c = node.at("curve");
    if (!c.is_array() || c.empty()) return;
    CurveSpec spec;
    spec.title = title;
    spec.x_label = "t";
    spec.y_label = "d(c1(t), c2(t + tau))";
    for (const auto& p : c)
      spec.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    if (node.contains("bound")) spec.hline = node.at("bound").get<double>();
    out.emplace_back("curve", svg_curve(spec));
  };
  if (check == "shadow-lemma") {
    residual_curve(details);
    if (report.contains("witness")) residual_curve(report.at("witness"));
  }
  if (check == "recipe-curve" && details.is_object() &&
      details.contains("curve") && details.at("curve").is_array() &&
      !details.at("curve").empty()) {
    CurveSpec spec;
    spec.title = title;
    spec.x_label = "log10(delta)";
    spec.y_label = "T";
    for (const auto& row : details.at("curve"))
      spec.points.push_back({std::log10(row.at("delta").get<double>()),
                             row.at("T").get<double>()});
    std::sort(spec.points.begin(), spec.points.end());
    out.emplace_back("T-vs-delta", svg_curve(spec));
  }
  return out;
}

}  // namespace bicomb
