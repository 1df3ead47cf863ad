#include "ramprisk/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "ramprisk/errors.hpp"
#include "ramprisk/format.hpp"

namespace ramprisk::data {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::optional<double> to_double(std::string_view text) {
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

template <typename Int>
std::optional<Int> to_int(std::string_view text) {
    Int value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

// Days since 1970-01-01 in the proleptic Gregorian calendar.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool leap(std::int64_t y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(std::int64_t y, unsigned m) {
    static constexpr unsigned table[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && leap(y) ? 29 : table[m - 1];
}

// Reads exactly `width` digits at `pos`.
std::optional<unsigned> digits(std::string_view s, std::size_t pos, std::size_t width) {
    if (pos + width > s.size()) return std::nullopt;
    const auto sub = s.substr(pos, width);
    if (!std::all_of(sub.begin(), sub.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return std::nullopt;
    }
    return to_int<unsigned>(sub);
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'", 0);
    }
    return in;
}

}  // namespace

std::int64_t parse_timestamp(std::string_view text) {
    text = trim(text);
    const auto bad = [&]() {
        return InvalidArgument("unrecognized timestamp '" + std::string(text) + "'");
    };
    if (text.empty()) throw bad();

    const bool integer = std::all_of(text.begin() + (text.front() == '-' ? 1 : 0), text.end(),
                                     [](char c) { return c >= '0' && c <= '9'; });
    if (integer) {
        if (auto v = to_int<std::int64_t>(text)) return *v;
        throw bad();
    }

    // YYYY-MM-DD
    const auto year = digits(text, 0, 4);
    const auto month = digits(text, 5, 2);
    const auto day = digits(text, 8, 2);
    if (!year || !month || !day || text[4] != '-' || text[7] != '-') throw bad();
    if (*month < 1 || *month > 12 || *day < 1 || *day > days_in_month(*year, *month)) throw bad();

    std::int64_t seconds = days_from_civil(*year, *month, *day) * 86400;
    std::size_t pos = 10;
    if (pos == text.size()) return seconds;

    if (text[pos] != 'T' && text[pos] != ' ') throw bad();
    const auto hour = digits(text, pos + 1, 2);
    const auto minute = digits(text, pos + 4, 2);
    if (!hour || !minute || text[pos + 3] != ':' || *hour > 23 || *minute > 59) throw bad();
    seconds += *hour * 3600 + *minute * 60;
    pos += 6;
    if (pos < text.size() && text[pos] == ':') {
        const auto second = digits(text, pos + 1, 2);
        if (!second || *second > 59) throw bad();
        seconds += *second;
        pos += 3;
    }
    if (pos == text.size()) return seconds;

    if (text[pos] == 'Z' && pos + 1 == text.size()) return seconds;
    if (text[pos] == '+' || text[pos] == '-') {
        const int sign = text[pos] == '+' ? 1 : -1;
        const auto oh = digits(text, pos + 1, 2);
        std::size_t next = pos + 3;
        if (next < text.size() && text[next] == ':') ++next;
        const auto om = digits(text, next, 2);
        if (!oh || !om || next + 2 != text.size() || *oh > 23 || *om > 59) throw bad();
        return seconds - sign * static_cast<std::int64_t>(*oh * 3600 + *om * 60);
    }
    throw bad();
}

std::vector<TimeSeriesRecord> read_series(std::istream& in, const std::string& source) {
    std::vector<TimeSeriesRecord> records;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (!header_seen) {
            if (view != kSeriesHeader) {
                throw ParseError(source + ": expected header '" + std::string(kSeriesHeader) + "'", line_no);
            }
            header_seen = true;
            continue;
        }
        if (view.empty()) continue;

        const auto fields = split_fields(view);
        if (fields.size() != 3) {
            throw ParseError(source + ": expected 3 fields, found " + std::to_string(fields.size()), line_no);
        }
        TimeSeriesRecord record;
        record.timestamp = std::string(fields[0]);
        try {
            record.epoch_seconds = parse_timestamp(fields[0]);
        } catch (const InvalidArgument& e) {
            throw ParseError(source + ": " + e.what(), line_no);
        }
        const auto forecast = to_double(fields[1]);
        const auto observed = to_double(fields[2]);
        if (!forecast) {
            throw ParseError(source + ": invalid forecast_mw '" + std::string(fields[1]) + "'", line_no);
        }
        if (!observed) {
            throw ParseError(source + ": invalid observed_mw '" + std::string(fields[2]) + "'", line_no);
        }
        if (*forecast < 0.0 || *observed < 0.0) {
            throw ParseError(source + ": power values must be >= 0", line_no);
        }
        record.forecast_mw = *forecast;
        record.observed_mw = *observed;

        if (!records.empty() && record.epoch_seconds <= records.back().epoch_seconds) {
            throw FormatError(source + ": line " + std::to_string(line_no) + ": timestamp '" +
                              record.timestamp +
                              (record.epoch_seconds == records.back().epoch_seconds
                                   ? "' duplicates the previous row"
                                   : "' is earlier than the previous row"));
        }
        records.push_back(std::move(record));
    }
    if (!header_seen) {
        throw ParseError(source + ": empty file", 0);
    }
    return records;
}

std::vector<TimeSeriesRecord> load_series(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return read_series(in, path.string());
}

PairExtraction extract_pairs(const std::vector<TimeSeriesRecord>& series, const PairExtractionSpec& spec) {
    if (std::isnan(spec.window_lo) || std::isnan(spec.window_hi) || spec.window_lo > spec.window_hi) {
        throw InvalidArgument("extract_pairs: window must satisfy lo <= hi");
    }
    if (series.size() < 2) {
        throw InvalidArgument("extract_pairs: series needs at least two records");
    }
    if (spec.cadence_seconds && *spec.cadence_seconds <= 0) {
        throw InvalidArgument("extract_pairs: cadence must be positive");
    }

    std::int64_t cadence = 0;
    if (spec.cadence_seconds) {
        cadence = *spec.cadence_seconds;
    } else {
        std::map<std::int64_t, std::size_t> spacing;
        for (std::size_t t = 0; t + 1 < series.size(); ++t) {
            ++spacing[series[t + 1].epoch_seconds - series[t].epoch_seconds];
        }
        std::size_t best = 0;
        for (const auto& [gap, hits] : spacing) {
            if (hits > best) {  // ties resolve to the smallest spacing
                best = hits;
                cadence = gap;
            }
        }
    }

    const auto inside = [&](double f) { return f >= spec.window_lo && f <= spec.window_hi; };

    PairExtraction out;
    out.diagnostics.records = series.size();
    out.diagnostics.cadence_seconds = cadence;
    std::vector<ErrorPair> pairs;
    for (std::size_t t = 0; t + 1 < series.size(); ++t) {
        const TimeSeriesRecord& a = series[t];
        const TimeSeriesRecord& b = series[t + 1];
        const bool eligible =
            inside(a.forecast_mw) && (spec.mode == WindowMode::first || inside(b.forecast_mw));
        if (!eligible) continue;
        if (spec.require_consecutive && b.epoch_seconds - a.epoch_seconds != cadence) {
            ++out.diagnostics.skipped_gaps;
            continue;
        }
        pairs.emplace_back(a.observed_mw - a.forecast_mw, b.observed_mw - b.forecast_mw);
    }
    out.diagnostics.pairs = pairs.size();
    out.samples = SampleSet(std::move(pairs), "window [" + format_double(spec.window_lo) + ", " +
                                                  format_double(spec.window_hi) + "]");
    return out;
}

std::pair<SampleSet, SampleSet> prefix_split(const SampleSet& samples, std::size_t count) {
    if (count < 1 || count > samples.size()) {
        throw InvalidArgument("prefix_split: count " + std::to_string(count) + " outside [1, " +
                              std::to_string(samples.size()) + "]");
    }
    return {samples.prefix(count), samples};
}

SampleSet read_pairs(std::istream& in, const std::string& source) {
    std::vector<ErrorPair> pairs;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (!header_seen) {
            if (view != kPairsHeader) {
                throw ParseError(source + ": expected header '" + std::string(kPairsHeader) + "'", line_no);
            }
            header_seen = true;
            continue;
        }
        if (view.empty()) continue;
        const auto fields = split_fields(view);
        if (fields.size() != 2) {
            throw ParseError(source + ": expected 2 fields, found " + std::to_string(fields.size()), line_no);
        }
        const auto dw1 = to_double(fields[0]);
        const auto dw2 = to_double(fields[1]);
        if (!dw1 || !dw2) {
            throw ParseError(source + ": invalid number", line_no);
        }
        pairs.emplace_back(*dw1, *dw2);
    }
    if (!header_seen) {
        throw ParseError(source + ": empty file", 0);
    }
    return SampleSet(std::move(pairs), source);
}

SampleSet load_pairs(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return read_pairs(in, path.string());
}

void write_pairs(std::ostream& out, const SampleSet& samples) {
    out << kPairsHeader << '\n';
    for (const ErrorPair& p : samples.pairs()) {
        out << format_double(p.dw1()) << ',' << format_double(p.dw2()) << '\n';
    }
}

InputKind sniff_input(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    std::string line;
    std::getline(in, line);
    const std::string_view header = trim(line);
    if (header == kSeriesHeader) return InputKind::series;
    if (header == kPairsHeader) return InputKind::pairs;
    throw ParseError(path.string() + ": unrecognized header '" + std::string(header) + "'", 1);
}

}  // namespace ramprisk::data
