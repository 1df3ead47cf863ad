#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ramprisk/domain.hpp"

namespace ramprisk {

/// Per-sample margins g_i = threshold - h_i, where h_i is the directed
/// historical ramp of sample i (dw1 - dw2 for down, dw2 - dw1 for up).
/// A positive margin means the sample sits inside the no-ramp region.
class MarginVector {
public:
    explicit MarginVector(std::vector<double> margins);

    std::span<const double> values() const noexcept { return margins_; }
    std::size_t size() const noexcept { return margins_.size(); }
    double operator[](std::size_t i) const { return margins_[i]; }

private:
    std::vector<double> margins_;
};

/// Worst-case probability curve over a threshold grid. Each point may be attained
/// by a different worst-case distribution, so this is an envelope rather than
/// the survival function of any single law.
struct SweepCurve {
    std::vector<double> thresholds;
    std::vector<double> ramp_probabilities;
    std::vector<double> density;  // forward difference quotient, last entry repeated
};

struct WorstCaseSolution {
    double value = 0.0;  // optimal dual objective, clamped to [0, 1]
    double gamma_star = 0.0;
    std::optional<std::size_t> active_breakpoint;  // index into the descending positive margins
};

/// Directed ramp h_i of a single pair.
double directed_ramp(const ErrorPair& pair, Direction direction) noexcept;

MarginVector ramp_margins(const SampleSet& samples, Direction direction, double threshold);

/// ||(1, -1)||_q = 2^(1/q) with 1/p + 1/q = 1.
double dual_norm_scale(double p);

/// r = -ln(1 - alpha) / sample_count, alpha being the confidence level (0.9, 0.99, ...).
double radius_from_confidence(double alpha, std::size_t sample_count);

/// Value of the one-dimensional dual objective at a given gamma:
///   (1/I) * sum_{g_i > 0} min(1, gamma * g_i / scale) - gamma * radius.
double dual_objective(const MarginVector& margins, double radius, double scale, double gamma);

/// Maximizes dual_objective over gamma >= 0 by a breakpoint scan.
WorstCaseSolution solve_worst_case(const MarginVector& margins, double radius, double scale);

struct EstimateOptions {
    SolverPath solver = SolverPath::closed_form;
};

EstimateResult estimate(const SampleSet& samples, const RampQuery& query,
                        const WassersteinConfig& config, EstimateOptions options = {});

/// Empirical ramp probability: fraction of samples with directed ramp >= threshold.
double erp(const SampleSet& samples, const RampQuery& query);

/// Evaluates `estimate` on every grid point. The grid must be strictly ascending
/// with at least two points.
SweepCurve sweep(const SampleSet& samples, Direction direction, std::span<const double> thresholds,
                 const WassersteinConfig& config);

}  // namespace ramprisk
