#include "tadeval/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace tadeval::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view cell, double& out) {
    cell = trim(cell);
    if (cell.empty()) return false;
    if (cell.front() == '+') cell.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc{} && ptr == cell.data() + cell.size() && std::isfinite(out);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t pos = 0;
    for (;;) {
        const auto comma = line.find(',', pos);
        cells.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return cells;
}

struct Table {
    std::vector<std::string> header;
    std::size_t cols = 0;
    std::vector<double> values;
    std::size_t rows = 0;
    std::vector<std::size_t> line_of_row;
};

Table parse_table(const std::string& text, const std::string& source) {
    Table tab;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool first = true;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        std::string_view line(text.data() + pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (trim(line).empty()) {
            if (pos > text.size()) break;
            continue;
        }
        const auto cells = split(line);
        if (first) {
            first = false;
            bool any_numeric = false;
            double tmp;
            for (auto c : cells) any_numeric = any_numeric || parse_double(c, tmp);
            tab.cols = cells.size();
            if (!any_numeric) {
                for (auto c : cells) tab.header.emplace_back(trim(c));
                continue;
            }
        }
        if (cells.size() != tab.cols)
            throw DataError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(tab.cols) +
                            " columns, found " + std::to_string(cells.size()));
        for (auto c : cells) {
            double v;
            if (!parse_double(c, v))
                throw DataError(source + ":" + std::to_string(line_no) + ": cannot parse '" + std::string(trim(c)) +
                                "' as a finite number");
            tab.values.push_back(v);
        }
        ++tab.rows;
        tab.line_of_row.push_back(line_no);
    }
    if (tab.rows == 0) throw DataError(source + ": no data rows");
    return tab;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(path.string() + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Table parse_single_column(const std::string& text, const std::string& source) {
    auto tab = parse_table(text, source);
    if (tab.cols != 1)
        throw DataError(source + ": expected a single column, found " + std::to_string(tab.cols));
    return tab;
}

}  // namespace

TimeSeries parse_series(const std::string& text, const std::string& source) {
    auto tab = parse_table(text, source);
    return TimeSeries(tab.rows, tab.cols, std::move(tab.values), std::move(tab.header));
}

LabelSeries parse_labels(const std::string& text, const std::string& source) {
    const auto tab = parse_single_column(text, source);
    std::vector<std::uint8_t> y;
    y.reserve(tab.rows);
    for (std::size_t i = 0; i < tab.values.size(); ++i) {
        const double v = tab.values[i];
        if (v != 0.0 && v != 1.0)
            throw DataError(source + ":" + std::to_string(tab.line_of_row[i]) + ": label " + format_number(v) +
                            " is not 0 or 1");
        y.push_back(v == 1.0 ? 1 : 0);
    }
    return LabelSeries(std::move(y));
}

ScoreSeries parse_scores(const std::string& text, const std::string& source) {
    auto tab = parse_single_column(text, source);
    return ScoreSeries(std::move(tab.values), source);
}

TimeSeries load_series(const std::filesystem::path& path) { return parse_series(read_file(path), path.string()); }
LabelSeries load_labels(const std::filesystem::path& path) { return parse_labels(read_file(path), path.string()); }
ScoreSeries load_scores(const std::filesystem::path& path) { return parse_scores(read_file(path), path.string()); }

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string to_csv(const TimeSeries& series) {
    std::string out;
    if (!series.channel_names().empty()) {
        for (std::size_t c = 0; c < series.cols(); ++c) {
            if (c) out += ',';
            out += series.channel_names()[c];
        }
        out += '\n';
    }
    for (std::size_t t = 0; t < series.rows(); ++t) {
        for (std::size_t c = 0; c < series.cols(); ++c) {
            if (c) out += ',';
            out += format_number(series(t, c));
        }
        out += '\n';
    }
    return out;
}

std::string to_csv(const LabelSeries& labels) {
    std::string out = "label\n";
    out.reserve(labels.size() * 2 + 8);
    for (auto y : labels.labels) {
        out += y ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string to_csv(const ScoreSeries& scores, const std::string& header) {
    std::string out = header + "\n";
    for (double s : scores.scores) {
        out += format_number(s);
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError(path.string() + ": cannot open for writing");
        out << contents;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw DataError(path.string() + ": write failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw DataError(path.string() + ": cannot move output into place");
    }
}

}  // namespace tadeval::io
