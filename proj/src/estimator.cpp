#include "ramprisk/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ramprisk/errors.hpp"
#include "ramprisk/lp.hpp"

namespace ramprisk {

MarginVector::MarginVector(std::vector<double> margins) : margins_(std::move(margins)) {
    for (double g : margins_) {
        if (!std::isfinite(g)) {
            throw InvalidArgument("margins must be finite");
        }
    }
}

double directed_ramp(const ErrorPair& pair, Direction direction) noexcept {
    return direction == Direction::down ? pair.dw1() - pair.dw2() : pair.dw2() - pair.dw1();
}

MarginVector ramp_margins(const SampleSet& samples, Direction direction, double threshold) {
    if (samples.empty()) {
        throw EmptyInput("ramp_margins: sample set is empty");
    }
    if (!std::isfinite(threshold)) {
        throw InvalidArgument("ramp_margins: threshold must be finite");
    }
    std::vector<double> margins;
    margins.reserve(samples.size());
    for (const ErrorPair& pair : samples.pairs()) {
        margins.push_back(threshold - directed_ramp(pair, direction));
    }
    return MarginVector(std::move(margins));
}

double dual_norm_scale(double p) {
    if (std::isnan(p) || p < 1.0) {
        throw InvalidArgument("dual_norm_scale: p must be >= 1");
    }
    if (std::isinf(p)) {
        return 2.0;
    }
    // 1/q = 1 - 1/p
    return std::pow(2.0, 1.0 - 1.0 / p);
}

double radius_from_confidence(double alpha, std::size_t sample_count) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument("radius_from_confidence: alpha must lie in (0, 1)");
    }
    if (sample_count < 1) {
        throw InvalidArgument("radius_from_confidence: sample_count must be >= 1");
    }
    return -std::log1p(-alpha) / static_cast<double>(sample_count);
}

namespace {

void check_dual_inputs(const MarginVector& margins, double radius, double scale) {
    if (margins.size() == 0) {
        throw EmptyInput("solve_worst_case: no margins");
    }
    if (!std::isfinite(radius) || radius < 0.0) {
        throw InvalidArgument("solve_worst_case: radius must be finite and >= 0");
    }
    if (!std::isfinite(scale) || scale <= 0.0) {
        throw InvalidArgument("solve_worst_case: scale must be finite and > 0");
    }
}

}  // namespace

double dual_objective(const MarginVector& margins, double radius, double scale, double gamma) {
    check_dual_inputs(margins, radius, scale);
    double total = 0.0;
    for (double g : margins.values()) {
        if (g > 0.0) {
            total += std::min(1.0, gamma * g / scale);
        }
    }
    return total / static_cast<double>(margins.size()) - gamma * radius;
}

WorstCaseSolution solve_worst_case(const MarginVector& margins, double radius, double scale) {
    check_dual_inputs(margins, radius, scale);

    std::vector<double> positive;
    positive.reserve(margins.size());
    for (double g : margins.values()) {
        if (g > 0.0) positive.push_back(g);
    }
    std::sort(positive.begin(), positive.end(), std::greater<>());

    // tail[k] = sum of positive[k..]; accumulated from the small end.
    const std::size_t n = positive.size();
    std::vector<double> tail(n + 1, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        tail[k] = tail[k + 1] + positive[k];
    }

    // Breakpoints sit at gamma = scale / positive[k], ascending in k. Past the
    // first k breakpoints the slope is tail[k] / (I * scale) - radius.
    const double count = static_cast<double>(margins.size());
    const double budget = count * scale * radius;

    WorstCaseSolution out;
    if (tail[0] <= budget) {
        return out;  // slope nonpositive from gamma = 0
    }
    for (std::size_t k = 1; k <= n; ++k) {
        if (tail[k] <= budget) {
            const double pivot = positive[k - 1];
            out.gamma_star = scale / pivot;
            out.active_breakpoint = k - 1;
            // The first k terms saturate at 1; the rest contribute g_j / pivot.
            const double value =
                (static_cast<double>(k) + tail[k] / pivot) / count - out.gamma_star * radius;
            out.value = std::clamp(value, 0.0, 1.0);
            return out;
        }
    }
    return out;  // unreachable: tail[n] == 0 <= budget
}

EstimateResult estimate(const SampleSet& samples, const RampQuery& query,
                        const WassersteinConfig& config, EstimateOptions options) {
    const MarginVector margins = ramp_margins(samples, query.direction(), query.threshold());
    const double scale = dual_norm_scale(config.p());
    const double radius = config.radius();

    const WorstCaseSolution solution = options.solver == SolverPath::closed_form
                                           ? solve_worst_case(margins, radius, scale)
                                           : lp::solve_worst_case_lp(margins, radius, scale);

    EstimateResult result;
    result.inner_value = solution.value;
    result.ramp_probability = 1.0 - solution.value;
    result.gamma_star = solution.gamma_star;
    result.active_breakpoint = solution.active_breakpoint;
    result.solver = options.solver;
    result.radius_used = radius;
    return result;
}

double erp(const SampleSet& samples, const RampQuery& query) {
    if (samples.empty()) {
        throw EmptyInput("erp: sample set is empty");
    }
    std::size_t ramps = 0;
    for (const ErrorPair& pair : samples.pairs()) {
        if (directed_ramp(pair, query.direction()) >= query.threshold()) ++ramps;
    }
    return static_cast<double>(ramps) / static_cast<double>(samples.size());
}

SweepCurve sweep(const SampleSet& samples, Direction direction, std::span<const double> thresholds,
                 const WassersteinConfig& config) {
    if (thresholds.size() < 2) {
        throw InvalidArgument("sweep: grid needs at least two thresholds");
    }
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
        if (!std::isfinite(thresholds[k])) {
            throw InvalidArgument("sweep: grid values must be finite");
        }
        if (k > 0 && !(thresholds[k] > thresholds[k - 1])) {
            throw InvalidArgument("sweep: grid must be strictly ascending");
        }
    }

    SweepCurve curve;
    curve.thresholds.assign(thresholds.begin(), thresholds.end());
    curve.ramp_probabilities.reserve(thresholds.size());
    for (double t : thresholds) {
        curve.ramp_probabilities.push_back(
            estimate(samples, RampQuery(direction, t), config).ramp_probability);
    }

    const std::size_t n = thresholds.size();
    curve.density.resize(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        curve.density[k] = (curve.ramp_probabilities[k] - curve.ramp_probabilities[k + 1]) /
                           (thresholds[k + 1] - thresholds[k]);
    }
    curve.density[n - 1] = curve.density[n - 2];
    return curve;
}

}  // namespace ramprisk
