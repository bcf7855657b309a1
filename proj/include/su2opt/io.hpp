#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "su2opt/errors.hpp"
#include "su2opt/frontlines.hpp"
#include "su2opt/su2.hpp"

namespace su2opt::io {

// 17 significant digits: round-trip exact for binary64, stable across runs.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// ---------------------------------------------------------------------
// Key-value run configuration: one KEY=VALUE pair per line, '#' comments.
// Command-line flags override file values.

struct RunConfig {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }

  std::string get(const std::string& key, const std::string& fallback) const {
    const auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }

  double get_double(const std::string& key, double fallback) const {
    const auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument(it->second);
      return v;
    } catch (const std::exception&) {
      throw RangeError("config key '" + key + "' is not a number: " + it->second);
    }
  }
};

inline RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw RangeError("config line " + std::to_string(lineno) + " has no '='");
    }
    cfg.values[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RangeError("cannot open config file: " + path);
  return parse_config(in);
}

// ---------------------------------------------------------------------
// CSV

struct CsvWriter {
  std::ostream& out;

  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out << (i ? "," : "") << cols[i];
    }
    out << "\n";
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "," : "") << cells[i];
    }
    out << "\n";
  }
};

// ---------------------------------------------------------------------
// Deterministic SVG emission: fixed viewport, fixed styling constants, no
// timestamps, element order follows the input order.

struct SvgTheme {
  int size = 640;
  double margin = 0.08;  // disk-units padding around the unit disk
  std::string disk_stroke = "#404040";
  std::string zero_stroke = "#9a9a9a";
  std::string trace_dashed = "4,3";
  std::string trace_dotted = "1.5,2.5";
  std::vector<std::string> time_colors = {"#1f77b4", "#d62728", "#2ca02c",
                                          "#9467bd", "#ff7f0e", "#8c564b"};
};

class SvgDisk {
 public:
  explicit SvgDisk(SvgTheme theme = {}) : theme_(theme) {
    body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << theme_.size
          << "\" height=\"" << theme_.size << "\" viewBox=\"0 0 " << theme_.size
          << " " << theme_.size << "\">\n";
    body_ << "<rect width=\"" << theme_.size << "\" height=\"" << theme_.size
          << "\" fill=\"white\"/>\n";
    circle(0.0, 0.0, 1.0, theme_.disk_stroke, 1.5);
  }

  void circle(double cx, double cy, double r, const std::string& stroke,
              double width) {
    body_ << "<circle cx=\"" << coord(cx) << "\" cy=\"" << coord(-cy) << "\" r=\""
          << format_fixed(r * scale(), 3) << "\" fill=\"none\" stroke=\"" << stroke
          << "\" stroke-width=\"" << format_fixed(width, 2) << "\"/>\n";
  }

  void polyline(const std::vector<DiskPoint>& pts, const std::string& stroke,
                double width, const std::string& dash = "") {
    if (pts.size() < 2) return;
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
          << format_fixed(width, 2) << "\"";
    if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
    body_ << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) body_ << " ";
      body_ << coord(pts[i].x) << "," << coord(-pts[i].y);
    }
    body_ << "\"/>\n";
  }

  void text(double x, double y, const std::string& s) {
    body_ << "<text x=\"" << coord(x) << "\" y=\"" << coord(-y)
          << "\" font-family=\"monospace\" font-size=\"12\">" << s << "</text>\n";
  }

  std::string finish() {
    body_ << "</svg>\n";
    return body_.str();
  }

  const SvgTheme& theme() const { return theme_; }

 private:
  double scale() const { return 0.5 * theme_.size / (1.0 + theme_.margin); }

  std::string coord(double v) const {
    return format_fixed(0.5 * theme_.size + v * scale(), 3);
  }

  SvgTheme theme_;
  std::ostringstream body_;
};

}  // namespace su2opt::io
