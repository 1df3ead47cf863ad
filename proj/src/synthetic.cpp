#include "ramprisk/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "ramprisk/format.hpp"

namespace ramprisk::synthetic {
namespace {

// Uniform and normal draws built from raw engine output only, so a seed
// gives the same stream with any standard library.
class Draws {
public:
    explicit Draws(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double error_shock(const SeriesSpec& spec) {
        const double scale = uniform() < spec.tail_probability ? spec.tail_scale : 1.0;
        return scale * normal();
    }

private:
    std::mt19937_64 engine_;
};

double tenth(double x) { return std::round(x * 10.0) / 10.0; }

// Unit-variance normalizer for the mixture shock.
double mixture_sd(const SeriesSpec& spec) {
    const double p = spec.tail_probability;
    return std::sqrt((1.0 - p) + p * spec.tail_scale * spec.tail_scale);
}

}  // namespace

std::string format_utc(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds >= 0 ? epoch_seconds / 86400 : (epoch_seconds - 86399) / 86400;
    const std::int64_t secs = epoch_seconds - days * 86400;
    // civil_from_days
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400 + (m <= 2);

    char buf[64];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<long long>(y), m, d,
                  static_cast<long long>(secs / 3600), static_cast<long long>(secs / 60 % 60),
                  static_cast<long long>(secs % 60));
    return buf;
}

std::vector<data::TimeSeriesRecord> generate_series(const SeriesSpec& spec) {
    Draws draws(spec.seed);
    const double norm = mixture_sd(spec);
    const double f_innov = spec.forecast_sd_mw * std::sqrt(1.0 - spec.forecast_ar * spec.forecast_ar);
    const double e_innov = spec.error_sd_mw * std::sqrt(1.0 - spec.error_ar * spec.error_ar);

    double forecast = spec.center_mw;
    double error = spec.error_sd_mw * draws.error_shock(spec) / norm;
    std::int64_t stamp = spec.start_epoch;

    std::vector<data::TimeSeriesRecord> out;
    out.reserve(spec.records);
    std::size_t next_gap = 0;
    for (std::size_t i = 0; i < spec.records; ++i) {
        if (next_gap < spec.gaps_before.size() && spec.gaps_before[next_gap] == i) {
            stamp += spec.cadence_seconds;
            ++next_gap;
        }
        data::TimeSeriesRecord record;
        record.epoch_seconds = stamp;
        record.timestamp = format_utc(stamp);
        record.forecast_mw = std::max(0.0, tenth(forecast));
        record.observed_mw = std::max(0.0, tenth(forecast + error));
        out.push_back(std::move(record));

        forecast = spec.center_mw + spec.forecast_ar * (forecast - spec.center_mw) + f_innov * draws.normal();
        error = spec.error_ar * error + e_innov * draws.error_shock(spec) / norm;
        stamp += spec.cadence_seconds;
    }
    return out;
}

void write_series(std::ostream& out, const std::vector<data::TimeSeriesRecord>& series) {
    out << data::kSeriesHeader << '\n';
    for (const auto& r : series) {
        out << r.timestamp << ',' << format_double(r.forecast_mw) << ',' << format_double(r.observed_mw) << '\n';
    }
}

SampleSet generate_pairs(std::size_t count, std::uint64_t seed, const SeriesSpec& shape) {
    Draws draws(seed);
    const double norm = mixture_sd(shape);
    const double innov = shape.error_sd_mw * std::sqrt(1.0 - shape.error_ar * shape.error_ar);
    std::vector<ErrorPair> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double e1 = shape.error_sd_mw * draws.error_shock(shape) / norm;
        const double e2 = shape.error_ar * e1 + innov * draws.error_shock(shape) / norm;
        pairs.emplace_back(tenth(e1), tenth(e2));
    }
    return SampleSet(std::move(pairs), "synthetic seed " + std::to_string(seed));
}

}  // namespace ramprisk::synthetic
