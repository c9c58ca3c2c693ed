#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "export.hpp"
#include "time.hpp"
#include "timeseries.hpp"

namespace tweetmine::svg {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double width = 800, height = 420;
  double left = 64, right = 24, top = 40, bottom = 64;
  double plot_w() const { return width - left - right; }
  double plot_h() const { return height - top - bottom; }
};

inline void open(std::ostream& out, const Frame& f, std::string_view title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(f.width) << "\" height=\"" << num(f.height)
      << "\" viewBox=\"0 0 " << num(f.width) << ' ' << num(f.height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(f.width) << "\" height=\"" << num(f.height) << "\" fill=\"white\"/>\n"
      << "<text x=\"" << num(f.width / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << tweetmine::detail::xml_escape(title) << "</text>\n";
}

// Horizontal grid and labels for y in [0, y_max].
inline void y_axis(std::ostream& out, const Frame& f, double y_max, std::string_view label) {
  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double v = y_max * i / ticks;
    const double y = f.top + f.plot_h() * (1.0 - v / y_max);
    out << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(y) << "\" x2=\"" << num(f.left + f.plot_w()) << "\" y2=\""
        << num(y) << "\" stroke=\"#dddddd\"/>\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    out << "<text x=\"" << num(f.left - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << buf << "</text>\n";
  }
  out << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(f.top) << "\" x2=\"" << num(f.left) << "\" y2=\""
      << num(f.top + f.plot_h()) << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(f.top + f.plot_h()) << "\" x2=\"" << num(f.left + f.plot_w())
      << "\" y2=\"" << num(f.top + f.plot_h()) << "\" stroke=\"black\"/>\n"
      << "<text x=\"14\" y=\"" << num(f.top + f.plot_h() / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << num(f.top + f.plot_h() / 2) << ")\">" << tweetmine::detail::xml_escape(label) << "</text>\n";
}

inline double nice_max(double v) {
  if (v <= 0) return 1.0;
  const double step = 0.1;
  return std::min(1.0, std::ceil(v / step - 1e-9) * step);
}

}  // namespace detail

// Time vs F_name; absent windows break the line.
inline void write_line_chart(std::ostream& out, const FrequencySeries& series, std::string_view title) {
  detail::Frame f;
  detail::open(out, f, title);
  detail::y_axis(out, f, 1.0, "F_name");
  const std::size_t n = series.points.size();
  auto x_of = [&](std::size_t i) {
    return f.left + (n <= 1 ? f.plot_w() / 2 : f.plot_w() * static_cast<double>(i) / static_cast<double>(n - 1));
  };
  auto y_of = [&](double v) { return f.top + f.plot_h() * (1.0 - v); };
  const std::size_t label_every = std::max<std::size_t>(1, (n + 5) / 6);
  for (std::size_t i = 0; i < n; i += label_every) {
    std::string t = format_iso8601(series.points[i].window_start);  // YYYY-MM-DDTHH:MM:SSZ
    out << "<text x=\"" << detail::num(x_of(i)) << "\" y=\"" << detail::num(f.top + f.plot_h() + 18)
        << "\" text-anchor=\"middle\">" << t.substr(5, 5) << ' ' << t.substr(11, 5) << "</text>\n";
  }
  out << "<text x=\"" << detail::num(f.left + f.plot_w() / 2) << "\" y=\"" << detail::num(f.height - 14)
      << "\" text-anchor=\"middle\">time (UTC)</text>\n";
  std::vector<std::vector<std::pair<double, double>>> segments(1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = series.points[i];
    if (!p.f) {
      if (!segments.back().empty()) segments.emplace_back();
      continue;
    }
    segments.back().emplace_back(x_of(i), y_of(*p.f));
  }
  for (const auto& seg : segments) {
    if (seg.empty()) continue;
    if (seg.size() == 1) {
      out << "<circle cx=\"" << detail::num(seg[0].first) << "\" cy=\"" << detail::num(seg[0].second)
          << "\" r=\"2\" fill=\"#1f77b4\"/>\n";
      continue;
    }
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < seg.size(); ++i)
      out << (i ? " " : "") << detail::num(seg[i].first) << ',' << detail::num(seg[i].second);
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

// Bars in the given order.
inline void write_bar_chart(std::ostream& out, const std::vector<std::pair<std::string, double>>& bars,
                            std::string_view title, std::string_view y_label = "F_name") {
  detail::Frame f;
  f.width = std::max(480.0, 64.0 + 24.0 + 36.0 * static_cast<double>(bars.size()));
  detail::open(out, f, title);
  double max_v = 0;
  for (const auto& b : bars) max_v = std::max(max_v, b.second);
  const double y_max = detail::nice_max(max_v);
  detail::y_axis(out, f, y_max, y_label);
  const double slot = bars.empty() ? f.plot_w() : f.plot_w() / static_cast<double>(bars.size());
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double h = f.plot_h() * bars[i].second / y_max;
    const double x = f.left + slot * static_cast<double>(i) + slot * 0.15;
    out << "<rect x=\"" << detail::num(x) << "\" y=\"" << detail::num(f.top + f.plot_h() - h) << "\" width=\""
        << detail::num(slot * 0.7) << "\" height=\"" << detail::num(h) << "\" fill=\"#1f77b4\"><title>"
        << tweetmine::detail::xml_escape(bars[i].first) << "</title></rect>\n";
    const double cx = x + slot * 0.35, cy = f.top + f.plot_h() + 10;
    out << "<text x=\"" << detail::num(cx) << "\" y=\"" << detail::num(cy) << "\" text-anchor=\"end\" transform=\"rotate(-45 "
        << detail::num(cx) << ' ' << detail::num(cy) << ")\">" << tweetmine::detail::xml_escape(bars[i].first) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace tweetmine::svg
