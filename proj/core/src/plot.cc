// Copyright 2026 The qdarwin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdarwin/plot.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qdarwin {

namespace {

constexpr double kPanelWidth = 480.0;
constexpr double kPanelHeight = 360.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 150.0;  // room for the legend
constexpr double kTop = 36.0;
constexpr double kBottom = 48.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Curve {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<Curve> curves;
};

using Getter = std::function<std::optional<double>(const SweepRecord&)>;

std::string num(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

std::string scenario_label(const SweepRecord& r) {
  if (r.x0) return "x0=" + num(*r.x0);
  if (r.phase_angle) return "arg φ=" + num(*r.phase_angle);
  return r.scenario;
}

// Key fields identifying a curve, excluding the x-axis variable.
using KeyFn = std::function<std::vector<std::pair<std::string, std::string>>(const SweepRecord&)>;

KeyFn key_without(const std::string& x_field) {
  return [x_field](const SweepRecord& r) {
    std::vector<std::pair<std::string, std::string>> key;
    if (x_field != "scenario") key.emplace_back("scenario", scenario_label(r));
    if (x_field != "ratio") key.emplace_back("ratio", "ω/γ=" + num(r.omega_over_gamma()));
    if (x_field != "p") key.emplace_back("p", "p=" + num(r.p));
    key.emplace_back("n", "n=" + std::to_string(r.n));
    return key;
  };
}

// Groups records into curves; labels show only fields that differ between curves.
std::vector<Curve> group_curves(const std::vector<const SweepRecord*>& rows, const KeyFn& key,
                                const Getter& x, const Getter& y) {
  std::vector<std::vector<std::pair<std::string, std::string>>> keys;
  std::vector<Curve> curves;
  for (const SweepRecord* r : rows) {
    const auto k = key(*r);
    auto it = std::find(keys.begin(), keys.end(), k);
    std::size_t idx = static_cast<std::size_t>(it - keys.begin());
    if (it == keys.end()) {
      keys.push_back(k);
      curves.emplace_back();
    }
    const auto xv = x(*r);
    const auto yv = y(*r);
    if (xv && yv && std::isfinite(*xv) && std::isfinite(*yv)) {
      curves[idx].points.emplace_back(*xv, *yv);
    }
  }
  for (std::size_t c = 0; c < curves.size(); ++c) {
    std::string label;
    for (std::size_t f = 0; f < keys[c].size(); ++f) {
      bool varies = false;
      for (const auto& other : keys) {
        varies = varies || other[f].second != keys[c][f].second;
      }
      if (varies) {
        label += (label.empty() ? "" : ", ") + keys[c][f].second;
      }
    }
    curves[c].label = label.empty() ? keys[c].back().second : label;
  }
  return curves;
}

std::vector<const SweepRecord*> all_rows(const std::vector<SweepRecord>& records) {
  std::vector<const SweepRecord*> out;
  for (const auto& r : records) out.push_back(&r);
  return out;
}

Getter chi_norm() {
  return [](const SweepRecord& r) { return r.chi_e1_norm; };
}

std::vector<Panel> layout_series(const std::vector<SweepRecord>& records) {
  Panel p{"Holevo χ(S:E1) over time", "γt", "χ(S:E1) / S(ρ_S)", false, {}};
  p.curves = group_curves(all_rows(records), key_without(""),
                          [](const SweepRecord& r) { return r.gamma_t(); }, chi_norm());
  return {p};
}

std::vector<Panel> layout_scan(const std::vector<SweepRecord>& records, bool ratio_axis) {
  const std::string field = ratio_axis ? "ratio" : "p";
  const std::string x_label = ratio_axis ? "ω/γ" : "p";
  Getter x = ratio_axis ? Getter([](const SweepRecord& r) { return std::optional<double>(r.omega_over_gamma()); })
                        : Getter([](const SweepRecord& r) { return std::optional<double>(r.p); });
  const auto rows = all_rows(records);
  Panel red{"Redundancy at its peak time", x_label, "Red", ratio_axis, {}};
  red.curves = group_curves(rows, key_without(field), x, [](const SweepRecord& r) {
    return r.redundancy ? std::optional<double>(*r.redundancy) : std::nullopt;
  });
  Panel info{"χ(S:E1) at the same time", x_label, "χ(S:E1) / S(ρ_S)", ratio_axis, {}};
  info.curves = group_curves(rows, key_without(field), x, chi_norm());
  return {red, info};
}

std::vector<Panel> layout_pointer(const std::vector<SweepRecord>& records) {
  std::vector<std::string> names;
  for (const auto& r : records) {
    if (std::find(names.begin(), names.end(), r.panel) == names.end()) names.push_back(r.panel);
  }
  std::vector<Panel> out;
  for (const auto& name : names) {
    std::vector<const SweepRecord*> rows;
    for (const auto& r : records) {
      if (r.panel == name) rows.push_back(&r);
    }
    Panel p{name.empty() ? "Pointer fidelity" : "(" + name + ") pointer fidelity", "p",
            "|<φ0|0>|²", false, {}};
    p.curves = group_curves(rows, key_without("p"), [](const SweepRecord& r) { return std::optional<double>(r.p); },
                            [](const SweepRecord& r) { return r.pointer_fidelity; });
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Panel> build_layout(const std::vector<SweepRecord>& records, const std::string& layout) {
  if (layout == "fig1" || layout == "fig3" || layout == "series") return layout_series(records);
  if (layout == "fig2" || layout == "scan_p") return layout_scan(records, false);
  if (layout == "fig4" || layout == "scan_ratio") return layout_scan(records, true);
  if (layout == "fig5" || layout == "pointer") return layout_pointer(records);
  throw std::invalid_argument("unknown figure tag: " + layout);
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      const double pad = std::max(std::abs(lo) * 0.1, 0.5);
      lo -= pad;
      hi += pad;
    }
  }
};

void render_panel(std::ostream& out, const Panel& panel, double x0) {
  const double w = kPanelWidth - kLeft - kRight;
  const double h = kPanelHeight - kTop - kBottom;
  auto tx = [&](double v) { return panel.log_x ? std::log10(v) : v; };
  Range xr, yr;
  for (const auto& c : panel.curves) {
    for (const auto& [x, y] : c.points) {
      if (panel.log_x && !(x > 0.0)) continue;
      xr.add(tx(x));
      yr.add(y);
    }
  }
  xr.finish();
  yr.finish();
  auto px = [&](double v) { return x0 + kLeft + (tx(v) - xr.lo) / (xr.hi - xr.lo) * w; };
  auto py = [&](double v) { return kTop + h - (v - yr.lo) / (yr.hi - yr.lo) * h; };

  out << "<g>\n";
  out << "<text x=\"" << num(x0 + kLeft + w / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(panel.title) << "</text>\n";
  out << "<rect x=\"" << num(x0 + kLeft) << "\" y=\"" << kTop << "\" width=\"" << num(w) << "\" height=\""
      << num(h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = xr.lo + (xr.hi - xr.lo) * t / 4.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * t / 4.0;
    const double sx = x0 + kLeft + w * t / 4.0;
    const double sy = kTop + h - h * t / 4.0;
    out << "<line x1=\"" << num(sx) << "\" y1=\"" << num(kTop + h) << "\" x2=\"" << num(sx) << "\" y2=\""
        << num(kTop + h + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(sx) << "\" y=\"" << num(kTop + h + 18)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << num(panel.log_x ? std::pow(10.0, fx) : fx)
        << "</text>\n";
    out << "<line x1=\"" << num(x0 + kLeft - 5) << "\" y1=\"" << num(sy) << "\" x2=\"" << num(x0 + kLeft)
        << "\" y2=\"" << num(sy) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(x0 + kLeft - 8) << "\" y=\"" << num(sy + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << num(fy) << "</text>\n";
  }
  out << "<text x=\"" << num(x0 + kLeft + w / 2) << "\" y=\"" << num(kPanelHeight - 10)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(panel.x_label) << "</text>\n";
  out << "<text transform=\"translate(" << num(x0 + 16) << "," << num(kTop + h / 2)
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << escape(panel.y_label) << "</text>\n";

  for (std::size_t c = 0; c < panel.curves.size(); ++c) {
    const Curve& curve = panel.curves[c];
    const char* color = kPalette[c % (sizeof kPalette / sizeof kPalette[0])];
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, y] : curve.points) {
      if (panel.log_x && !(x > 0.0)) continue;
      pts.emplace_back(px(x), py(y));
    }
    if (pts.size() == 1) {
      out << "<circle cx=\"" << num(pts[0].first) << "\" cy=\"" << num(pts[0].second)
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    } else if (!pts.empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t k = 0; k < pts.size(); ++k) {
        out << (k ? " " : "") << num(pts[k].first) << "," << num(pts[k].second);
      }
      out << "\"/>\n";
    }
    const double ly = kTop + 12 + 16.0 * static_cast<double>(c);
    const double lx = x0 + kLeft + w + 10;
    out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 18) << "\" y2=\""
        << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(lx + 22) << "\" y=\"" << num(ly) << "\" font-size=\"11\">"
        << escape(curve.label) << "</text>\n";
  }
  out << "</g>\n";
}

}  // namespace

bool is_known_layout(const std::string& layout) {
  static const std::set<std::string> known{"fig1", "fig2", "fig3", "fig4", "fig5",
                                           "series", "scan_p", "scan_ratio", "pointer"};
  return known.count(layout) > 0;
}

std::string render_plot(const std::vector<SweepRecord>& records, const std::string& layout) {
  if (!is_known_layout(layout)) {
    throw std::invalid_argument("unknown figure tag: " + layout);
  }
  const auto panels = build_layout(records, layout);
  std::ostringstream out;
  const double width = kPanelWidth * static_cast<double>(panels.size());
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(kPanelHeight) << "\" viewBox=\"0 0 " << num(width) << " " << num(kPanelHeight)
      << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    render_panel(out, panels[k], kPanelWidth * static_cast<double>(k));
  }
  out << "</svg>\n";
  return out.str();
}

void emit_plot(const std::vector<SweepRecord>& records, const std::string& layout,
               const std::string& path) {
  const std::string svg = render_plot(records, layout);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << svg;
  if (!out) {
    throw std::runtime_error("write failed for " + path);
  }
}

}  // namespace qdarwin
