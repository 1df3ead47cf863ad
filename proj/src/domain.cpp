#include "ramprisk/domain.hpp"

#include <cmath>
#include <limits>

#include "ramprisk/errors.hpp"
#include "ramprisk/estimator.hpp"

namespace ramprisk {
namespace {

void require_finite(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw InvalidArgument(std::string(what) + " must be finite");
    }
}

}  // namespace

ErrorPair::ErrorPair(double dw1, double dw2) : dw1_(dw1), dw2_(dw2) {
    require_finite(dw1, "dw1");
    require_finite(dw2, "dw2");
}

SampleSet::SampleSet(std::vector<ErrorPair> pairs, std::string provenance)
    : pairs_(std::move(pairs)), provenance_(std::move(provenance)) {}

SampleSet SampleSet::prefix(std::size_t count) const {
    if (count > pairs_.size()) {
        throw InvalidArgument("prefix of " + std::to_string(count) + " pairs requested from a set of " +
                              std::to_string(pairs_.size()));
    }
    std::vector<ErrorPair> head(pairs_.begin(), pairs_.begin() + static_cast<std::ptrdiff_t>(count));
    std::string note = provenance_.empty() ? std::string{} : provenance_ + " ";
    note += "[first " + std::to_string(count) + "]";
    return SampleSet(std::move(head), std::move(note));
}

std::string_view to_string(Direction d) noexcept {
    return d == Direction::down ? "down" : "up";
}

Direction parse_direction(std::string_view text) {
    if (text == "down") return Direction::down;
    if (text == "up") return Direction::up;
    throw InvalidArgument("unknown ramp direction '" + std::string(text) + "'");
}

std::string_view to_string(SolverPath s) noexcept {
    return s == SolverPath::closed_form ? "closed_form" : "lp_oracle";
}

WassersteinConfig::WassersteinConfig(double p, double radius, RadiusSource source)
    : p_(p), q_(0.0), radius_(radius), source_(source) {
    if (std::isnan(p) || p < 1.0) {
        throw InvalidArgument("metric order p must be >= 1");
    }
    if (!std::isfinite(radius) || radius < 0.0) {
        throw InvalidArgument("radius must be finite and >= 0");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (p == 1.0) {
        q_ = inf;
    } else if (std::isinf(p)) {
        q_ = 1.0;
    } else {
        q_ = p / (p - 1.0);
    }
}

WassersteinConfig WassersteinConfig::with_radius(double p, double radius) {
    return WassersteinConfig(p, radius, RadiusSource::explicit_radius);
}

WassersteinConfig WassersteinConfig::with_confidence(double p, double alpha, std::size_t sample_count) {
    WassersteinConfig config(p, radius_from_confidence(alpha, sample_count), RadiusSource::from_confidence);
    config.alpha_ = alpha;
    config.sample_count_ = sample_count;
    return config;
}

RampQuery::RampQuery(Direction direction, double threshold_error_space)
    : direction_(direction), threshold_(threshold_error_space) {
    require_finite(threshold_error_space, "ramp threshold");
}

RampQuery RampQuery::from_power_space(Direction direction, double ramp_mw, double forecast1_mw,
                                      double forecast2_mw) {
    RampQuery query(direction, threshold_to_error_space(ramp_mw, forecast1_mw, forecast2_mw, direction));
    query.origin_ = PowerSpaceOrigin{ramp_mw, forecast1_mw, forecast2_mw};
    return query;
}

double threshold_to_error_space(double ramp_mw, double forecast1_mw, double forecast2_mw,
                                Direction direction) {
    require_finite(ramp_mw, "ramp threshold");
    require_finite(forecast1_mw, "period-1 forecast");
    require_finite(forecast2_mw, "period-2 forecast");
    if (direction == Direction::down) {
        return ramp_mw - forecast1_mw + forecast2_mw;
    }
    return ramp_mw - forecast2_mw + forecast1_mw;
}

}  // namespace ramprisk
