#include "feg/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace feg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Locale-independent fixed-point rendering for coordinates and tick labels.
std::string fmt(double value, int precision = 2) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Canvas {
  std::string body;

  void rect(double x, double y, double w, double h, const char* fill) {
    body += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) +
            "\" height=\"" + fmt(h) + "\" fill=\"" + fill + "\"/>\n";
  }
  void line(double x1, double y1, double x2, double y2, const char* stroke,
            double width = 1.0) {
    body += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) +
            "\" y2=\"" + fmt(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
            fmt(width, 1) + "\"/>\n";
  }
  void text(double x, double y, const std::string& s, int size = 11,
            const char* anchor = "middle") {
    body += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-size=\"" +
            std::to_string(size) + "\" font-family=\"sans-serif\" text-anchor=\"" + anchor +
            "\">" + escape(s) + "</text>\n";
  }

  std::string finish(double width, double height) const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width, 0) +
           "\" height=\"" + fmt(height, 0) + "\" viewBox=\"0 0 " + fmt(width, 0) + " " +
           fmt(height, 0) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
           body + "</svg>\n";
  }
};

}  // namespace

std::string attack_svg(const std::vector<std::string>& action_labels, const Policy& policy,
                       const CostVector& costs, const Eigen::VectorXd& net) {
  const Eigen::Index n = policy.size();
  const double width = 120.0 + 90.0 * static_cast<double>(n);
  const double height = 320.0;
  const double plot_left = 60.0, plot_right = width - 20.0;
  const double plot_top = 40.0, plot_bottom = height - 60.0;

  double lo = 0.0, hi = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (double v : {policy[i], costs[i], net[i]}) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double pad = 0.1 * (hi - lo);
  lo -= pad;
  hi += pad;
  auto y_of = [&](double v) {
    return plot_bottom - (v - lo) / (hi - lo) * (plot_bottom - plot_top);
  };

  Canvas canvas;
  canvas.text(width / 2.0, 22.0, "policy mass, best-response cost, net utility per action", 13);
  canvas.line(plot_left, y_of(0.0), plot_right, y_of(0.0), "#888");
  canvas.line(plot_left, plot_top, plot_left, plot_bottom, "#888");
  canvas.text(plot_left - 6.0, y_of(0.0) + 4.0, "0", 10, "end");
  canvas.text(plot_left - 6.0, y_of(hi - pad) + 4.0, fmt(hi - pad), 10, "end");
  canvas.text(plot_left - 6.0, y_of(lo + pad) + 4.0, fmt(lo + pad), 10, "end");

  const char* fills[3] = {"#4472c4", "#c44444", "#44a060"};
  const char* series[3] = {"p", "cost", "net"};
  for (int s = 0; s < 3; ++s) {
    const double lx = plot_left + 12.0 + 70.0 * s;
    canvas.rect(lx, height - 26.0, 10.0, 10.0, fills[s]);
    canvas.text(lx + 16.0, height - 17.0, series[s], 11, "start");
  }

  const double group_width = (plot_right - plot_left) / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double gx = plot_left + group_width * (static_cast<double>(i) + 0.5);
    const double values[3] = {policy[i], costs[i], net[i]};
    for (int s = 0; s < 3; ++s) {
      const double bx = gx - 33.0 + 22.0 * s;
      const double v = values[s];
      if (v == -kInf || v == kInf) {
        const double edge = v == kInf ? plot_top : plot_bottom;
        canvas.rect(bx, std::min(edge, y_of(0.0)), 18.0, std::abs(edge - y_of(0.0)), fills[s]);
        canvas.text(bx + 9.0, edge + (v == kInf ? -4.0 : 14.0), v == kInf ? "+inf" : "-inf",
                    10);
      } else {
        const double y0 = y_of(std::max(v, 0.0));
        const double y1 = y_of(std::min(v, 0.0));
        canvas.rect(bx, y0, 18.0, std::max(y1 - y0, 0.5), fills[s]);
      }
    }
    canvas.text(gx, plot_bottom + 18.0, action_labels[static_cast<size_t>(i)], 11);
  }
  return canvas.finish(width, height);
}

std::string sweep_svg(const std::vector<SweepRow>& rows) {
  const double width = 560.0, height = 340.0;
  const double plot_left = 70.0, plot_right = width - 25.0;
  const double plot_top = 40.0, plot_bottom = height - 50.0;

  double lo = kInf, hi = -kInf;
  for (const SweepRow& row : rows) {
    lo = std::min(lo, row.certainty_equivalent);
    hi = std::max(hi, row.certainty_equivalent);
  }
  if (rows.empty()) {
    lo = 0.0;
    hi = 1.0;
  } else if (!(lo < hi)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.08 * (hi - lo);
  lo -= pad;
  hi += pad;

  const size_t count = rows.size();
  auto x_of = [&](size_t i) {
    return count == 1 ? (plot_left + plot_right) / 2.0
                      : plot_left + (plot_right - plot_left) * static_cast<double>(i) /
                            static_cast<double>(count - 1);
  };
  auto y_of = [&](double v) {
    return plot_bottom - (v - lo) / (hi - lo) * (plot_bottom - plot_top);
  };

  Canvas canvas;
  canvas.text(width / 2.0, 22.0, "certainty equivalent across the inverse temperature sweep",
              13);
  canvas.line(plot_left, plot_top, plot_left, plot_bottom, "#888");
  canvas.line(plot_left, plot_bottom, plot_right, plot_bottom, "#888");
  canvas.text(plot_left - 6.0, y_of(hi - pad) + 4.0, fmt(hi - pad, 3), 10, "end");
  canvas.text(plot_left - 6.0, y_of(lo + pad) + 4.0, fmt(lo + pad, 3), 10, "end");

  std::string points;
  for (size_t i = 0; i < count; ++i) {
    points += fmt(x_of(i)) + "," + fmt(y_of(rows[i].certainty_equivalent)) + " ";
  }
  canvas.body += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"#4472c4\" "
                 "stroke-width=\"1.5\"/>\n";

  const size_t ticks = std::min<size_t>(count, 6);
  for (size_t t = 0; t < ticks; ++t) {
    const size_t i = ticks == 1 ? 0 : t * (count - 1) / (ticks - 1);
    canvas.line(x_of(i), plot_bottom, x_of(i), plot_bottom + 4.0, "#888");
    canvas.text(x_of(i), plot_bottom + 18.0, fmt(rows[i].beta, 3), 10);
  }
  canvas.text(width / 2.0, height - 12.0, "beta", 11);
  return canvas.finish(width, height);
}

}  // namespace feg
