#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ramprisk/data.hpp"
#include "ramprisk/domain.hpp"

namespace ramprisk::synthetic {

// Seeded generator for an aggregated wind series. The forecast is an AR(1)
// process around `center_mw`; forecast errors are an AR(1) process with a
// two-component scale mixture for heavier tails. Values are rounded to 0.1 MW.
struct SeriesSpec {
    std::size_t records = 1800;
    std::uint64_t seed = 2004;
    double center_mw = 1065.0;
    double forecast_sd_mw = 12.0;
    double forecast_ar = 0.97;
    double error_sd_mw = 130.0;
    double error_ar = 0.6;
    double tail_probability = 0.1;
    double tail_scale = 2.5;
    std::int64_t start_epoch = 1072915200;  // 2004-01-01T00:00:00Z
    std::int64_t cadence_seconds = 3600;
    /// Record indices before which one period is dropped (creates cadence gaps).
    std::vector<std::size_t> gaps_before = {150, 450, 750, 1050, 1350, 1650};
};

std::vector<data::TimeSeriesRecord> generate_series(const SeriesSpec& spec);

/// Writes `timestamp,forecast_mw,observed_mw` with ISO-8601 UTC timestamps.
void write_series(std::ostream& out, const std::vector<data::TimeSeriesRecord>& series);

/// Error pairs drawn directly from the stationary law of two consecutive errors.
SampleSet generate_pairs(std::size_t count, std::uint64_t seed, const SeriesSpec& shape = {});

/// ISO-8601 UTC rendering of epoch seconds, e.g. 2004-01-01T00:00:00Z.
std::string format_utc(std::int64_t epoch_seconds);

}  // namespace ramprisk::synthetic
