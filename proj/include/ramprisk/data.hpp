#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ramprisk/domain.hpp"

namespace ramprisk::data {

inline constexpr std::string_view kSeriesHeader = "timestamp,forecast_mw,observed_mw";
inline constexpr std::string_view kPairsHeader = "dw1_mw,dw2_mw";

struct TimeSeriesRecord {
    std::string timestamp;  // as written in the file
    std::int64_t epoch_seconds = 0;
    double forecast_mw = 0.0;
    double observed_mw = 0.0;
};

enum class WindowMode {
    both,   // both periods' forecasts inside the window
    first,  // only the first period's forecast inside the window
};

struct PairExtractionSpec {
    double window_lo = 0.0;
    double window_hi = 0.0;
    WindowMode mode = WindowMode::both;
    bool require_consecutive = true;
    /// Expected spacing between consecutive records; inferred from the series
    /// (most frequent positive spacing) when empty.
    std::optional<std::int64_t> cadence_seconds;
};

struct ExtractionDiagnostics {
    std::size_t records = 0;
    std::size_t pairs = 0;
    std::size_t skipped_gaps = 0;  // eligible neighbours dropped for breaking the cadence
    std::int64_t cadence_seconds = 0;
};

struct PairExtraction {
    SampleSet samples;
    ExtractionDiagnostics diagnostics;
};

/// Integer epoch seconds, or ISO-8601 `YYYY-MM-DD[THH:MM[:SS]][Z|+HH:MM|-HH:MM]`
/// (a space may replace `T`). Throws InvalidArgument on anything else.
std::int64_t parse_timestamp(std::string_view text);

/// Parses the series CSV. `source` names the stream in error messages.
std::vector<TimeSeriesRecord> read_series(std::istream& in, const std::string& source = "<stream>");
std::vector<TimeSeriesRecord> load_series(const std::filesystem::path& path);

PairExtraction extract_pairs(const std::vector<TimeSeriesRecord>& series,
                             const PairExtractionSpec& spec);

/// (first `count` pairs, all pairs). Throws InvalidArgument unless 1 <= count <= size.
std::pair<SampleSet, SampleSet> prefix_split(const SampleSet& samples, std::size_t count);

SampleSet read_pairs(std::istream& in, const std::string& source = "<stream>");
SampleSet load_pairs(const std::filesystem::path& path);
void write_pairs(std::ostream& out, const SampleSet& samples);

enum class InputKind { series, pairs };

/// Identifies a CSV by its header line. Throws ParseError for unknown headers.
InputKind sniff_input(const std::filesystem::path& path);

}  // namespace ramprisk::data
