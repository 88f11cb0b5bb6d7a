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

#include "sweep_config.h"

#include <yaml-cpp/yaml.h>

#include "qdarwin/plot.h"

#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace qdarwin::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
  throw ConfigError(path + ": " + reason);
}

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void check_keys(const YAML::Node& node, const std::string& path, const std::set<std::string>& allowed) {
  if (!node.IsMap()) {
    fail(path.empty() ? "<root>" : path, "expected a mapping");
  }
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      fail(join(path, key), "unknown key");
    }
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& path, const char* what) {
  if (!node.IsScalar()) {
    fail(path, std::string("expected ") + what);
  }
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(path, std::string("expected ") + what + ", got '" + node.Scalar() + "'");
  }
}

// A scalar is accepted as a one-element list.
template <typename T>
std::vector<T> list(const YAML::Node& node, const std::string& path, const char* what) {
  std::vector<T> out;
  if (node.IsScalar()) {
    out.push_back(scalar<T>(node, path, what));
    return out;
  }
  if (!node.IsSequence()) {
    fail(path, std::string("expected a list of ") + what);
  }
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(scalar<T>(node[i], path + "[" + std::to_string(i) + "]", what));
  }
  return out;
}

std::vector<InitialScenario> parse_scenario(const YAML::Node& node, const std::string& path) {
  if (node.IsScalar()) {
    const auto kind = node.as<std::string>();
    if (kind == "circle_left") {
      return {InitialScenario::circle_left()};
    }
    fail(path, "scenario '" + kind + "' needs parameters; use a mapping with 'kind'");
  }
  check_keys(node, path, {"kind", "x0", "angle"});
  if (!node["kind"]) {
    fail(join(path, "kind"), "missing");
  }
  const auto kind = scalar<std::string>(node["kind"], join(path, "kind"), "a string");
  std::vector<InitialScenario> out;
  if (kind == "circle_left") {
    if (node["x0"] || node["angle"]) {
      fail(path, "circle_left takes no parameters");
    }
    out.push_back(InitialScenario::circle_left());
  } else if (kind == "amplitude") {
    if (!node["x0"]) fail(join(path, "x0"), "missing");
    if (node["angle"]) fail(join(path, "angle"), "not allowed for amplitude");
    const auto xs = list<double>(node["x0"], join(path, "x0"), "numbers");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!(xs[i] >= 0.0 && xs[i] <= 1.0)) {
        fail(join(path, "x0") + "[" + std::to_string(i) + "]", "x0 out of range [0, 1]");
      }
      out.push_back(InitialScenario::amplitude(xs[i]));
    }
  } else if (kind == "phase") {
    if (!node["angle"]) fail(join(path, "angle"), "missing");
    if (node["x0"]) fail(join(path, "x0"), "not allowed for phase");
    for (double a : list<double>(node["angle"], join(path, "angle"), "numbers")) {
      out.push_back(InitialScenario::phase_angle(a));
    }
  } else {
    fail(join(path, "kind"), "unknown scenario kind '" + kind + "' (circle_left, amplitude, phase)");
  }
  if (out.empty()) {
    fail(path, "empty scenario list");
  }
  return out;
}

struct PanelDefaults {
  std::vector<InitialScenario> scenarios{InitialScenario::circle_left()};
  std::vector<double> p{0.0};
  std::vector<double> omega{0.1};
  std::vector<double> gamma{0.1};
  std::vector<int> n{8};
};

void read_grids(const YAML::Node& node, const std::string& path, PanelDefaults& d) {
  if (node["scenario"]) d.scenarios = parse_scenario(node["scenario"], join(path, "scenario"));
  if (node["p"]) d.p = list<double>(node["p"], join(path, "p"), "numbers");
  if (node["omega"]) d.omega = list<double>(node["omega"], join(path, "omega"), "numbers");
  if (node["gamma"]) d.gamma = list<double>(node["gamma"], join(path, "gamma"), "numbers");
  if (node["n"]) d.n = list<int>(node["n"], join(path, "n"), "integers");
}

void check_panel(const SweepPanel& panel, const std::string& path) {
  auto each = [&](const auto& values, const char* key, auto&& ok, const char* reason) {
    if (values.empty()) fail(join(path, key), "empty grid");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!ok(values[i])) fail(join(path, key) + "[" + std::to_string(i) + "]", reason);
    }
  };
  each(panel.p, "p", [](double v) { return v >= 0.0 && v <= 1.0; }, "p out of range [0, 1]");
  each(panel.omega, "omega", [](double v) { return v > 0.0 && std::isfinite(v); }, "omega must be > 0");
  each(panel.gamma, "gamma", [](double v) { return v > 0.0 && std::isfinite(v); }, "gamma must be > 0");
  each(panel.n, "n", [](int v) { return v >= 1 && v <= 10; }, "n out of range [1, 10]");
}

}  // namespace

bool is_safe_basename(const std::string& name) {
  if (name.empty() || name.front() == '.' || name.size() > 128) {
    return false;
  }
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

SweepSpec parse_sweep_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream msg;
    msg << "parse error at line " << e.mark.line + 1 << ", column " << e.mark.column + 1 << ": " << e.msg;
    throw ConfigError(msg.str());
  }
  if (!root || root.IsNull()) {
    throw ConfigError("<root>: empty config");
  }
  check_keys(root, "", {"name", "layout", "sampling", "quantities", "time_grid", "redundancy", "delta",
                        "scenario", "p", "omega", "gamma", "n", "panels"});

  SweepSpec spec;
  spec.figure = root["name"] ? scalar<std::string>(root["name"], "name", "a string") : "sweep";
  if (!is_safe_basename(spec.figure)) {
    fail("name", "must be a plain file name ([A-Za-z0-9_.-], no leading dot)");
  }

  spec.sampling = Sampling::kSeries;
  if (root["sampling"]) {
    const auto s = scalar<std::string>(root["sampling"], "sampling", "a string");
    const auto parsed = parse_sampling(s);
    if (!parsed) fail("sampling", "unknown sampling '" + s + "' (series, max_redundancy)");
    spec.sampling = *parsed;
  }

  spec.quantities = {Quantity::kEntropyS, Quantity::kChiE1};
  if (root["quantities"]) {
    spec.quantities.clear();
    const auto names = list<std::string>(root["quantities"], "quantities", "strings");
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto q = parse_quantity(names[i]);
      if (!q) fail("quantities[" + std::to_string(i) + "]", "unknown quantity '" + names[i] + "'");
      spec.quantities.push_back(*q);
    }
    if (spec.quantities.empty()) fail("quantities", "empty list");
  }

  if (root["layout"]) {
    spec.layout = scalar<std::string>(root["layout"], "layout", "a string");
    if (!is_known_layout(spec.layout)) {
      fail("layout", "unknown layout '" + spec.layout + "'");
    }
  } else {
    spec.layout = spec.sampling == Sampling::kSeries ? "series" : "scan_p";
  }

  if (const auto tg = root["time_grid"]) {
    check_keys(tg, "time_grid", {"points", "gamma_t_max"});
    if (tg["points"]) spec.time_grid.points = scalar<int>(tg["points"], "time_grid.points", "an integer");
    if (tg["gamma_t_max"]) {
      spec.time_grid.gamma_t_max = scalar<double>(tg["gamma_t_max"], "time_grid.gamma_t_max", "a number");
    }
  }

  if (root["delta"]) {
    spec.redundancy.delta = scalar<double>(root["delta"], "delta", "a number");
    if (!(spec.redundancy.delta > 0.0 && spec.redundancy.delta < 1.0)) {
      fail("delta", "delta out of range (0, 1)");
    }
  }
  if (const auto rd = root["redundancy"]) {
    check_keys(rd, "redundancy", {"delta", "threshold_mode", "quantifier", "min_entropy"});
    if (rd["delta"]) {
      if (root["delta"]) fail("redundancy.delta", "delta given twice");
      spec.redundancy.delta = scalar<double>(rd["delta"], "redundancy.delta", "a number");
    }
    if (rd["threshold_mode"]) {
      const auto s = scalar<std::string>(rd["threshold_mode"], "redundancy.threshold_mode", "a string");
      const auto m = parse_threshold_mode(s);
      if (!m) fail("redundancy.threshold_mode", "unknown mode '" + s + "' (literal, strict)");
      spec.redundancy.threshold_mode = *m;
    }
    if (rd["quantifier"]) {
      const auto s = scalar<std::string>(rd["quantifier"], "redundancy.quantifier", "a string");
      const auto q = parse_quantifier(s);
      if (!q) fail("redundancy.quantifier", "unknown quantifier '" + s + "' (holevo, two-sided)");
      spec.redundancy.quantifier = *q;
    }
    if (rd["min_entropy"]) {
      spec.redundancy.min_entropy = scalar<double>(rd["min_entropy"], "redundancy.min_entropy", "a number");
    }
  }

  PanelDefaults defaults;
  read_grids(root, "", defaults);
  if (const auto panels = root["panels"]) {
    if (!panels.IsSequence() || panels.size() == 0) fail("panels", "expected a non-empty list");
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const std::string path = "panels[" + std::to_string(i) + "]";
      check_keys(panels[i], path, {"name", "scenario", "p", "omega", "gamma", "n"});
      PanelDefaults d = defaults;
      read_grids(panels[i], path, d);
      SweepPanel panel{panels[i]["name"] ? scalar<std::string>(panels[i]["name"], join(path, "name"), "a string")
                                         : std::string(),
                       d.scenarios, d.p, d.omega, d.gamma, d.n};
      check_panel(panel, path);
      spec.panels.push_back(std::move(panel));
    }
  } else {
    SweepPanel panel{"", defaults.scenarios, defaults.p, defaults.omega, defaults.gamma, defaults.n};
    check_panel(panel, "");
    spec.panels.push_back(std::move(panel));
  }

  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

SweepSpec load_sweep_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(path + ": cannot read config file");
  }
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  // Binary content: NUL bytes or malformed UTF-8.
  for (std::size_t i = 0; i < text.size();) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t extra = 4;  // continuation count; 4 marks an invalid lead byte
    if (c < 0x80) extra = 0;
    else if ((c >> 5) == 0x6) extra = 1;
    else if ((c >> 4) == 0xE) extra = 2;
    else if ((c >> 3) == 0x1E) extra = 3;
    bool bad = c == 0 || extra == 4 || i + extra >= text.size() + (extra == 0 ? 1 : 0);
    for (std::size_t k = 1; !bad && k <= extra; ++k) {
      bad = (static_cast<unsigned char>(text[i + k]) >> 6) != 0x2;
    }
    if (bad) {
      throw ConfigError(path + ": binary config rejected (expected UTF-8 text)");
    }
    i += extra + 1;
  }
  return parse_sweep_config(text);
}

}  // namespace qdarwin::cli
