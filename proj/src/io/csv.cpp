#include "gpa/io/csv.hpp"

#include <cmath>
#include <cstdio>

namespace gpa::io {

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_value(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<double>& times,
               const std::vector<analysis::EvaluatedSeries>& columns) {
  std::string line = "time";
  for (const auto& c : columns) line += "," + quote(c.label);
  out << line << '\n';
  for (std::size_t j = 0; j < times.size(); ++j) {
    line = format_value(times[j]);
    for (const auto& c : columns) line += "," + format_value(c.values[j]);
    out << line << '\n';
  }
}

void write_crossings(std::ostream& out, const std::vector<analysis::EvaluatedSeries>& columns,
                     const std::vector<std::vector<double>>& crossings) {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    std::string line = columns[c].label + ":";
    for (std::size_t k = 0; k < crossings[c].size(); ++k) {
      line += (k == 0 ? " " : ",") + format_value(crossings[c][k]);
    }
    out << line << '\n';
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

std::string gnuplot_script(const std::string& csv_path, const std::vector<std::string>& header) {
  std::string out;
  out += "set datafile separator \",\"\n";
  out += "set xlabel \"time\"\n";
  out += "set key outside\n";
  if (header.size() < 2) return out;
  out += "plot ";
  for (std::size_t c = 1; c < header.size(); ++c) {
    std::string title;
    for (char ch : header[c]) {
      if (ch == '"' || ch == '\\') title += '\\';
      title += ch;
    }
    out += (c == 1 ? "\"" + csv_path + "\"" : std::string(", \"\"")) + " using 1:" +
           std::to_string(c + 1) + " with lines title \"" + title + "\"";
  }
  return out + "\n";
}

}  // namespace gpa::io
