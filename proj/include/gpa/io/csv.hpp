#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gpa/analysis/evaluate.hpp"

namespace gpa::io {

/// 17 significant digits; NaN prints as "nan".
std::string format_value(double value);

/// Header `time,<label>...`, one LF-terminated row per grid point. Labels
/// containing commas or quotes are quoted.
void write_csv(std::ostream& out, const std::vector<double>& times,
               const std::vector<analysis::EvaluatedSeries>& columns);

/// One `<label>: t1,t2,...` line per series.
void write_crossings(std::ostream& out, const std::vector<analysis::EvaluatedSeries>& columns,
                     const std::vector<std::vector<double>>& crossings);

/// Splits one CSV record, honouring quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

/// A gnuplot script plotting every column of `csv_path` against time.
std::string gnuplot_script(const std::string& csv_path, const std::vector<std::string>& header);

}  // namespace gpa::io
