#pragma once

// Comma-separated text files: optional single header row, one row per time step.
// Labels and scores are single-column.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tadeval/core.hpp"

namespace tadeval::io {

TimeSeries load_series(const std::filesystem::path& path);
LabelSeries load_labels(const std::filesystem::path& path);
ScoreSeries load_scores(const std::filesystem::path& path);

// Parsers over in-memory text; `source` names the input in diagnostics.
TimeSeries parse_series(const std::string& text, const std::string& source = "<text>");
LabelSeries parse_labels(const std::string& text, const std::string& source = "<text>");
ScoreSeries parse_scores(const std::string& text, const std::string& source = "<text>");

// Nine significant digits.
std::string format_number(double v);

std::string to_csv(const TimeSeries& series);
std::string to_csv(const LabelSeries& labels);
std::string to_csv(const ScoreSeries& scores, const std::string& header = "score");

// Writes through a sibling temporary file and renames, so a failed run never
// leaves a truncated output behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace tadeval::io
