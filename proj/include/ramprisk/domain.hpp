#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ramprisk {

// Forecast errors follow the convention  error = observed - point forecast  (MW).
// With that sign, a power-space ramp  w1 - w2 >= R  is the error-space event
// dw1 - dw2 >= R - w1e + w2e.

/// One historical joint forecast-error observation for two consecutive periods.
class ErrorPair {
public:
    ErrorPair(double dw1, double dw2);

    double dw1() const noexcept { return dw1_; }
    double dw2() const noexcept { return dw2_; }

    friend bool operator==(const ErrorPair&, const ErrorPair&) = default;

private:
    double dw1_;
    double dw2_;
};

/// Ordered collection of error pairs; each pair carries mass 1/size() in the
/// empirical distribution. Order is kept exactly as ingested.
class SampleSet {
public:
    SampleSet() = default;
    explicit SampleSet(std::vector<ErrorPair> pairs, std::string provenance = {});

    std::span<const ErrorPair> pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    bool empty() const noexcept { return pairs_.empty(); }
    const ErrorPair& operator[](std::size_t i) const { return pairs_[i]; }
    const std::string& provenance() const noexcept { return provenance_; }

    /// First `count` pairs, in order. Throws InvalidArgument if count > size().
    SampleSet prefix(std::size_t count) const;

    friend bool operator==(const SampleSet& a, const SampleSet& b) { return a.pairs_ == b.pairs_; }

private:
    std::vector<ErrorPair> pairs_;
    std::string provenance_;
};

enum class Direction { down, up };

std::string_view to_string(Direction d) noexcept;
/// Accepts "down" / "up". Throws InvalidArgument otherwise.
Direction parse_direction(std::string_view text);

/// Wasserstein metric order p >= 1 (infinity allowed) and its ambiguity radius.
class WassersteinConfig {
public:
    enum class RadiusSource { explicit_radius, from_confidence };

    /// Radius given directly.
    static WassersteinConfig with_radius(double p, double radius);
    /// Radius derived from a confidence level and sample count, r = -ln(1 - alpha) / count.
    static WassersteinConfig with_confidence(double p, double alpha, std::size_t sample_count);

    double p() const noexcept { return p_; }
    /// Dual exponent, 1/p + 1/q = 1 (p = 1 gives q = inf, p = inf gives q = 1).
    double q() const noexcept { return q_; }
    double radius() const noexcept { return radius_; }
    RadiusSource radius_source() const noexcept { return source_; }
    /// Set only for RadiusSource::from_confidence.
    std::optional<double> alpha() const noexcept { return alpha_; }
    std::optional<std::size_t> sample_count() const noexcept { return sample_count_; }

private:
    WassersteinConfig(double p, double radius, RadiusSource source);

    double p_;
    double q_;
    double radius_;
    RadiusSource source_;
    std::optional<double> alpha_;
    std::optional<std::size_t> sample_count_;
};

/// Power-space description a threshold was derived from.
struct PowerSpaceOrigin {
    double ramp_mw;       // R_D or R_U
    double forecast1_mw;  // point forecast, period 1
    double forecast2_mw;  // point forecast, period 2
};

class RampQuery {
public:
    /// Threshold already expressed in forecast-error space.
    RampQuery(Direction direction, double threshold_error_space);
    /// Converts a power-space ramp threshold through the two point forecasts.
    static RampQuery from_power_space(Direction direction, double ramp_mw, double forecast1_mw,
                                      double forecast2_mw);

    Direction direction() const noexcept { return direction_; }
    double threshold() const noexcept { return threshold_; }
    const std::optional<PowerSpaceOrigin>& origin() const noexcept { return origin_; }

private:
    Direction direction_;
    double threshold_;
    std::optional<PowerSpaceOrigin> origin_;
};

enum class SolverPath { closed_form, lp_oracle };

std::string_view to_string(SolverPath s) noexcept;

struct EstimateResult {
    double ramp_probability = 0.0;  // 1 - inner_value, worst case over the ambiguity set
    double inner_value = 0.0;       // worst-case (infimum) mass of the no-ramp region
    double gamma_star = 0.0;
    std::optional<std::size_t> active_breakpoint;
    SolverPath solver = SolverPath::closed_form;
    double radius_used = 0.0;
};

/// r_D = R - w1e + w2e for down ramps, r_U = R - w2e + w1e for up ramps.
double threshold_to_error_space(double ramp_mw, double forecast1_mw, double forecast2_mw,
                                Direction direction);

}  // namespace ramprisk
