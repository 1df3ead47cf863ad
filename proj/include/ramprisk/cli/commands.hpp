#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ramprisk/data.hpp"
#include "ramprisk/domain.hpp"

namespace ramprisk::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kSolver = 3 };

/// Bad flag combination or flag value.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct Grid {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
};

struct RunConfig {
    std::filesystem::path input;
    std::optional<std::pair<double, double>> window;  // defaults to every record
    data::WindowMode window_mode = data::WindowMode::both;
    std::optional<std::int64_t> cadence_seconds;
    double p = 1.0;
    std::optional<double> radius;     // overrides confidences when both are set
    std::vector<double> confidences;
    std::vector<Direction> directions;
    std::vector<double> thresholds;
    /// Point forecasts (w1e, w2e); when set, thresholds are power-space ramps.
    std::optional<std::pair<double, double>> forecasts;
    std::vector<std::size_t> prefixes;
    std::optional<Grid> grid;
    SolverPath solver = SolverPath::closed_form;
    bool timing = false;
    OutputFormat format = OutputFormat::csv;
    std::optional<std::filesystem::path> output;
};

/// Tabular command output rendered either as CSV or as JSON.
struct Report {
    using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::optional<std::string> note;  // carried in JSON only

    void write_csv(std::ostream& out) const;
    void write_json(std::ostream& out) const;
};

/// Points lo, lo + step, ... up to hi.
std::vector<double> expand_grid(const Grid& grid);

/// Loads the configured input, extracting pairs first when it is a raw series.
SampleSet load_samples(const RunConfig& config, std::ostream& log);

void cmd_pairs(const RunConfig& config, std::ostream& out, std::ostream& log);
Report cmd_estimate(const RunConfig& config, std::ostream& log);
Report cmd_table(const RunConfig& config, std::ostream& log);
Report cmd_sweep(const RunConfig& config, std::ostream& log);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ramprisk::cli
