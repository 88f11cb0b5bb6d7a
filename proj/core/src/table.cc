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

#include "qdarwin/table.h"

#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qdarwin {

namespace {

using Formatter = std::function<std::string(const SweepRecord&)>;
using Parser = std::function<void(SweepRecord&, const std::string&)>;

struct Column {
  std::string name;
  Formatter format;
  Parser parse;  // null for derived columns
};

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) {
    throw std::invalid_argument("trailing characters in number: " + s);
  }
  return v;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) {
    throw std::invalid_argument("trailing characters in integer: " + s);
  }
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("expected true/false, got " + s);
}

std::string fmt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }
std::string fmt(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }
std::string fmt(const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : std::string(); }

template <class T>
Column text(std::string name, T SweepRecord::*field) {
  return {std::move(name), [field](const SweepRecord& r) { return r.*field; },
          [field](SweepRecord& r, const std::string& s) { r.*field = s; }};
}

Column real(std::string name, double SweepRecord::*field) {
  return {std::move(name), [field](const SweepRecord& r) { return format_number(r.*field); },
          [field](SweepRecord& r, const std::string& s) { r.*field = parse_double(s); }};
}

Column integer(std::string name, int SweepRecord::*field) {
  return {std::move(name), [field](const SweepRecord& r) { return std::to_string(r.*field); },
          [field](SweepRecord& r, const std::string& s) { r.*field = parse_int(s); }};
}

Column opt_real(std::string name, std::optional<double> SweepRecord::*field) {
  return {std::move(name), [field](const SweepRecord& r) { return fmt(r.*field); },
          [field](SweepRecord& r, const std::string& s) {
            r.*field = s.empty() ? std::nullopt : std::optional<double>(parse_double(s));
          }};
}

Column opt_int(std::string name, std::optional<int> SweepRecord::*field) {
  return {std::move(name), [field](const SweepRecord& r) { return fmt(r.*field); },
          [field](SweepRecord& r, const std::string& s) {
            r.*field = s.empty() ? std::nullopt : std::optional<int>(parse_int(s));
          }};
}

Column opt_bool(std::string name, std::optional<bool> SweepRecord::*field) {
  return {std::move(name), [field](const SweepRecord& r) { return fmt(r.*field); },
          [field](SweepRecord& r, const std::string& s) {
            r.*field = s.empty() ? std::nullopt : std::optional<bool>(parse_bool(s));
          }};
}

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      text("figure", &SweepRecord::figure),
      text("panel", &SweepRecord::panel),
      integer("point", &SweepRecord::point),
      text("scenario", &SweepRecord::scenario),
      opt_real("x0", &SweepRecord::x0),
      opt_real("phase_angle", &SweepRecord::phase_angle),
      real("omega", &SweepRecord::omega),
      real("gamma", &SweepRecord::gamma),
      {"omega_over_gamma", [](const SweepRecord& r) { return format_number(r.omega_over_gamma()); }, nullptr},
      real("p", &SweepRecord::p),
      integer("n", &SweepRecord::n),
      real("delta", &SweepRecord::delta),
      text("sampling", &SweepRecord::sampling),
      opt_real("time", &SweepRecord::time),
      {"gamma_t", [](const SweepRecord& r) { return fmt(r.gamma_t()); }, nullptr},
      opt_real("entropy_s", &SweepRecord::entropy_s),
      opt_real("chi_e1", &SweepRecord::chi_e1),
      opt_real("chi_e1_norm", &SweepRecord::chi_e1_norm),
      opt_real("acc_mi_e1", &SweepRecord::acc_mi_e1),
      opt_real("acc_mi_e1_norm", &SweepRecord::acc_mi_e1_norm),
      opt_int("redundancy", &SweepRecord::redundancy),
      opt_int("fraction_size", &SweepRecord::fraction_size),
      opt_bool("redundancy_defined", &SweepRecord::redundancy_defined),
      opt_real("pointer_fidelity", &SweepRecord::pointer_fidelity),
      opt_real("pointer_theta", &SweepRecord::pointer_theta),
      opt_real("pointer_phi", &SweepRecord::pointer_phi),
      opt_real("pointer_axis_deviation", &SweepRecord::pointer_axis_deviation),
      opt_real("sbs_reconstruction_error", &SweepRecord::sbs_reconstruction_error),
      opt_real("sbs_max_distinguishability", &SweepRecord::sbs_max_distinguishability),
      opt_real("sbs_decoherence_residual", &SweepRecord::sbs_decoherence_residual),
      opt_bool("sbs_like", &SweepRecord::sbs_like),
      text("flag", &SweepRecord::flag),
      text("threshold_mode", &SweepRecord::threshold_mode),
      text("quantifier", &SweepRecord::quantifier),
      text("pointer_convention", &SweepRecord::pointer_convention),
      text("time_selection", &SweepRecord::time_selection),
      text("grid_id", &SweepRecord::grid_id),
      text("version", &SweepRecord::version),
  };
  return cols;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": unterminated quote");
  }
  cells.push_back(std::move(cur));
  return cells;
}

}  // namespace

std::optional<double> SweepRecord::gamma_t() const {
  if (!time) {
    return std::nullopt;
  }
  return *time * gamma;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const std::vector<std::string>& table_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : columns()) {
      out.push_back(c.name);
    }
    return out;
  }();
  return names;
}

void write_table(const std::vector<SweepRecord>& records, std::ostream& out) {
  const auto& cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "," : "") << cols[i].name;
  }
  out << '\n';
  for (const auto& r : records) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out << (i ? "," : "") << quote(cols[i].format(r));
    }
    out << '\n';
  }
}

std::string format_table(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  write_table(records, out);
  return out.str();
}

std::vector<SweepRecord> read_table(std::istream& in) {
  const auto& cols = columns();
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("line 1: missing header");
  }
  const auto header = split_line(line, 1);
  std::vector<const Column*> order;
  for (const auto& name : header) {
    const Column* found = nullptr;
    for (const auto& c : cols) {
      if (c.name == name) {
        found = &c;
      }
    }
    if (!found) {
      throw std::runtime_error("line 1: unknown column " + name);
    }
    order.push_back(found);
  }
  std::vector<SweepRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const auto cells = split_line(line, line_no);
    if (cells.size() != order.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(order.size()) + " fields, got " +
                               std::to_string(cells.size()));
    }
    SweepRecord r;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!order[i]->parse) {
        continue;
      }
      try {
        order[i]->parse(r, cells[i]);
      } catch (const std::exception& e) {
        throw std::runtime_error("line " + std::to_string(line_no) + ", column " + order[i]->name +
                                 ": " + e.what());
      }
    }
    records.push_back(std::move(r));
  }
  return records;
}

void emit_table(const std::vector<SweepRecord>& records, const std::string& path) {
  if (records.empty()) {
    throw std::invalid_argument("emit_table: no records");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  write_table(records, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed for " + path);
  }
}

}  // namespace qdarwin
