#include "ramprisk/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ramprisk/errors.hpp"
#include "ramprisk/estimator.hpp"
#include "ramprisk/format.hpp"

namespace ramprisk::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<double> kDefaultLevels = {200.0, 300.0, 400.0};
const std::vector<std::size_t> kDefaultPrefixes = {200, 300, 400};
const std::vector<double> kDefaultConfidences = {0.9, 0.99, 0.999};

struct RadiusCell {
    std::optional<double> alpha;
    WassersteinConfig config;
    std::string label;
};

std::vector<RadiusCell> radius_cells(const RunConfig& config, const std::vector<double>& confidences,
                                     std::size_t sample_count) {
    std::vector<RadiusCell> cells;
    if (config.radius) {
        cells.push_back({std::nullopt, WassersteinConfig::with_radius(config.p, *config.radius),
                         "radius_" + format_double(*config.radius)});
        return cells;
    }
    for (double alpha : confidences) {
        cells.push_back({alpha, WassersteinConfig::with_confidence(config.p, alpha, sample_count),
                         "alpha_" + format_double(alpha)});
    }
    return cells;
}

RampQuery make_query(const RunConfig& config, Direction direction, double threshold) {
    if (config.forecasts) {
        return RampQuery::from_power_space(direction, threshold, config.forecasts->first,
                                           config.forecasts->second);
    }
    return RampQuery(direction, threshold);
}

std::vector<Direction> directions_or_both(const RunConfig& config) {
    if (config.directions.empty()) return {Direction::down, Direction::up};
    return config.directions;
}

SampleSet training_set(const SampleSet& samples, std::size_t prefix) {
    return data::prefix_split(samples, prefix).first;
}

}  // namespace

void Report::write_csv(std::ostream& out) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "") << columns[c];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            std::visit(
                [&out](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        out << format_double(v);
                    } else if constexpr (std::is_same_v<T, std::int64_t>) {
                        out << v;
                    } else if constexpr (std::is_same_v<T, std::string>) {
                        out << v;
                    }
                },
                row[c]);
        }
        out << '\n';
    }
}

void Report::write_json(std::ostream& out) const {
    nlohmann::ordered_json doc;
    if (note) doc["note"] = *note;
    doc["columns"] = columns;
    auto& items = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json item = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>) {
                        item[columns[c]] = nullptr;
                    } else {
                        item[columns[c]] = v;
                    }
                },
                row[c]);
        }
        items.push_back(std::move(item));
    }
    out << doc.dump(2) << '\n';
}

std::vector<double> expand_grid(const Grid& grid) {
    if (!std::isfinite(grid.lo) || !std::isfinite(grid.hi) || !std::isfinite(grid.step) || grid.step <= 0.0) {
        throw UsageError("--grid needs finite LO:HI:STEP with STEP > 0");
    }
    if (grid.hi < grid.lo) {
        throw UsageError("--grid needs LO <= HI");
    }
    std::vector<double> points;
    const double slack = 1e-9 * grid.step;
    for (std::size_t k = 0;; ++k) {
        const double t = grid.lo + static_cast<double>(k) * grid.step;
        if (t > grid.hi + slack) break;
        points.push_back(t);
    }
    return points;
}

SampleSet load_samples(const RunConfig& config, std::ostream& log) {
    if (data::sniff_input(config.input) == data::InputKind::pairs) {
        if (config.window) {
            log << "note: --window ignored for a pairs file\n";
        }
        return data::load_pairs(config.input);
    }
    const auto series = data::load_series(config.input);
    data::PairExtractionSpec spec;
    spec.window_lo = config.window ? config.window->first : 0.0;
    spec.window_hi = config.window ? config.window->second : kInf;
    spec.mode = config.window_mode;
    spec.cadence_seconds = config.cadence_seconds;
    auto extraction = data::extract_pairs(series, spec);
    const auto& d = extraction.diagnostics;
    log << "pairs: " << d.pairs << " (records " << d.records << ", skipped gaps " << d.skipped_gaps
        << ", cadence " << d.cadence_seconds << " s)\n";
    return std::move(extraction.samples);
}

void cmd_pairs(const RunConfig& config, std::ostream& out, std::ostream& log) {
    const SampleSet samples = load_samples(config, log);
    if (samples.empty()) {
        log << "warning: no pairs matched the window\n";
    }
    if (config.format == OutputFormat::csv) {
        data::write_pairs(out, samples);
        return;
    }
    Report report;
    report.columns = {"dw1_mw", "dw2_mw"};
    for (const ErrorPair& p : samples.pairs()) {
        report.rows.push_back({p.dw1(), p.dw2()});
    }
    report.write_json(out);
}

Report cmd_estimate(const RunConfig& config, std::ostream& log) {
    if (config.thresholds.empty()) throw UsageError("estimate needs --thresholds");
    if (!config.radius && config.confidences.empty()) {
        throw UsageError("estimate needs --radius or --confidence");
    }
    const SampleSet samples = load_samples(config, log);
    if (samples.empty()) throw EmptyInput("estimate: no sample pairs");

    std::vector<std::size_t> prefixes = config.prefixes;
    if (prefixes.empty()) prefixes.push_back(samples.size());

    Report report;
    report.columns = {"sample_count", "direction", "threshold_mw"};
    if (config.forecasts) report.columns.push_back("error_threshold_mw");
    for (const char* c : {"confidence", "radius", "erp", "ramp_probability", "inner_F", "gamma_star"}) {
        report.columns.emplace_back(c);
    }
    if (config.timing) report.columns.emplace_back("solve_time_s");

    for (std::size_t prefix : prefixes) {
        const SampleSet training = training_set(samples, prefix);
        const auto cells = radius_cells(config, config.confidences, training.size());
        for (Direction direction : directions_or_both(config)) {
            for (double threshold : config.thresholds) {
                const RampQuery query = make_query(config, direction, threshold);
                const double empirical = erp(training, query);
                for (const RadiusCell& cell : cells) {
                    const auto start = std::chrono::steady_clock::now();
                    const EstimateResult result = estimate(training, query, cell.config, {config.solver});
                    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

                    std::vector<Report::Cell> row = {static_cast<std::int64_t>(training.size()),
                                                     std::string(to_string(direction)), threshold};
                    if (config.forecasts) row.emplace_back(query.threshold());
                    row.emplace_back(cell.alpha ? Report::Cell{*cell.alpha} : Report::Cell{});
                    row.emplace_back(result.radius_used);
                    row.emplace_back(empirical);
                    row.emplace_back(result.ramp_probability);
                    row.emplace_back(result.inner_value);
                    row.emplace_back(result.gamma_star);
                    if (config.timing) row.emplace_back(elapsed.count());
                    report.rows.push_back(std::move(row));
                }
            }
        }
    }
    return report;
}

Report cmd_table(const RunConfig& config, std::ostream& log) {
    const SampleSet samples = load_samples(config, log);
    if (samples.empty()) throw EmptyInput("table: no sample pairs");

    const auto& prefixes = config.prefixes.empty() ? kDefaultPrefixes : config.prefixes;
    const auto& levels = config.thresholds.empty() ? kDefaultLevels : config.thresholds;
    const auto& confidences = config.confidences.empty() ? kDefaultConfidences : config.confidences;
    for (std::size_t prefix : prefixes) {
        if (prefix > samples.size()) {
            throw InvalidArgument("table: prefix " + std::to_string(prefix) + " exceeds the " +
                                  std::to_string(samples.size()) + " available pairs");
        }
    }

    Report report;
    report.columns = {"prefix", "direction", "threshold_mw", "orp", "erp"};
    for (const RadiusCell& cell : radius_cells(config, confidences, 1)) {
        report.columns.push_back("est_" + cell.label);
    }

    for (std::size_t prefix : prefixes) {
        const SampleSet training = training_set(samples, prefix);
        const auto cells = radius_cells(config, confidences, training.size());
        for (Direction direction : directions_or_both(config)) {
            for (double level : levels) {
                const RampQuery query = make_query(config, direction, level);
                std::vector<Report::Cell> row = {static_cast<std::int64_t>(prefix),
                                                 std::string(to_string(direction)), level,
                                                 erp(samples, query), erp(training, query)};
                for (const RadiusCell& cell : cells) {
                    row.emplace_back(estimate(training, query, cell.config, {config.solver}).ramp_probability);
                }
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

Report cmd_sweep(const RunConfig& config, std::ostream& log) {
    if (!config.grid) throw UsageError("sweep needs --grid LO:HI:STEP");
    if (config.directions.size() > 1) throw UsageError("sweep takes a single --direction");
    if (!config.radius && config.confidences.size() != 1) {
        throw UsageError("sweep needs --radius or exactly one --confidence");
    }
    if (config.prefixes.size() > 1) throw UsageError("sweep takes at most one --prefix");

    const std::vector<double> grid = expand_grid(*config.grid);
    if (grid.size() < 2) throw UsageError("--grid must yield at least two thresholds");

    const SampleSet samples = load_samples(config, log);
    if (samples.empty()) throw EmptyInput("sweep: no sample pairs");
    const SampleSet training =
        config.prefixes.empty() ? samples : training_set(samples, config.prefixes.front());
    const Direction direction = config.directions.empty() ? Direction::down : config.directions.front();
    const RadiusCell cell = radius_cells(config, config.confidences, training.size()).front();

    std::vector<double> error_grid;
    error_grid.reserve(grid.size());
    for (double t : grid) error_grid.push_back(make_query(config, direction, t).threshold());
    const SweepCurve curve = sweep(training, direction, error_grid, cell.config);

    Report report;
    report.columns = {"threshold_mw", "ramp_probability", "quasi_density"};
    report.note =
        "worst-case envelope: each threshold may be attained by a different worst-case distribution";
    for (std::size_t k = 0; k < grid.size(); ++k) {
        report.rows.push_back({grid[k], curve.ramp_probabilities[k], curve.density[k]});
    }
    return report;
}

namespace {

double parse_number(const std::string& text) {
    if (text == "inf") return kInf;
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || std::isnan(v)) throw std::invalid_argument(text);
    return v;
}

std::pair<double, double> parse_colon_pair(const std::string& text, const char* flag) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument(text);
        return {parse_number(text.substr(0, colon)), parse_number(text.substr(colon + 1))};
    } catch (const std::logic_error&) {
        throw UsageError(std::string(flag) + " expects two numbers A:B, got '" + text + "'");
    }
}

Grid parse_grid(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(piece, &used));
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::logic_error&) {
            throw UsageError("--grid expects LO:HI:STEP, got '" + text + "'");
        }
    }
    if (parts.size() != 3) throw UsageError("--grid expects LO:HI:STEP, got '" + text + "'");
    return {parts[0], parts[1], parts[2]};
}

double parse_order(const std::string& text) {
    if (text == "inf") return kInf;
    try {
        std::size_t used = 0;
        const double p = std::stod(text, &used);
        if (used != text.size() || !(p >= 1.0)) throw std::invalid_argument(text);
        return p;
    } catch (const std::logic_error&) {
        throw UsageError("--p expects a number >= 1 or 'inf', got '" + text + "'");
    }
}

struct RawFlags {
    std::string input;
    std::string window;
    std::string window_mode = "both";
    std::int64_t cadence = 0;
    std::string p = "1";
    std::optional<double> radius;
    std::vector<double> confidences;
    std::string direction;
    std::vector<double> thresholds;
    std::string forecasts;
    std::vector<std::size_t> prefixes;
    std::string grid;
    std::string solver = "closed-form";
    bool timing = false;
    std::string format = "csv";
    std::string output;
};

void add_flags(CLI::App* cmd, RawFlags& f) {
    cmd->add_option("--input", f.input, "Series CSV (timestamp,forecast_mw,observed_mw) or pairs CSV")
        ->required();
    cmd->add_option("--window", f.window, "Forecast window LO:HI in MW (HI may be 'inf')");
    cmd->add_option("--window-mode", f.window_mode, "Window applies to 'both' periods or the 'first'")
        ->check(CLI::IsMember({"both", "first"}));
    cmd->add_option("--cadence", f.cadence, "Expected record spacing in seconds (default: inferred)");
    cmd->add_option("--output", f.output, "Output path (default: stdout)");
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_estimation_flags(CLI::App* cmd, RawFlags& f) {
    cmd->add_option("--p", f.p, "Wasserstein order: 1, 2, inf (any real >= 1 accepted)");
    cmd->add_option("--radius", f.radius, "Ambiguity radius; overrides --confidence");
    cmd->add_option("--confidence", f.confidences, "Confidence levels A[,A...] in (0,1)")->delimiter(',');
    cmd->add_option("--direction", f.direction, "up, down or both")
        ->check(CLI::IsMember({"up", "down", "both"}));
    cmd->add_option("--thresholds", f.thresholds, "Ramp thresholds T[,T...] in MW")->delimiter(',');
    cmd->add_option("--forecasts", f.forecasts,
                    "Point forecasts W1:W2 in MW; thresholds are then power-space ramps");
    cmd->add_option("--prefix", f.prefixes, "Training prefix sizes N[,N...]")->delimiter(',');
    cmd->add_option("--solver", f.solver, "closed-form or lp")->check(CLI::IsMember({"closed-form", "lp"}));
}

RunConfig to_config(const RawFlags& f, std::ostream& err) {
    RunConfig c;
    c.input = f.input;
    if (!f.window.empty()) {
        c.window = parse_colon_pair(f.window, "--window");
        if (c.window->first > c.window->second) throw UsageError("--window needs LO <= HI");
    }
    c.window_mode = f.window_mode == "first" ? data::WindowMode::first : data::WindowMode::both;
    if (f.cadence != 0) {
        if (f.cadence < 0) throw UsageError("--cadence must be positive");
        c.cadence_seconds = f.cadence;
    }
    c.p = parse_order(f.p);
    if (f.radius) {
        if (!std::isfinite(*f.radius) || *f.radius < 0.0) throw UsageError("--radius must be >= 0");
        if (!f.confidences.empty()) err << "note: --radius overrides --confidence\n";
        c.radius = f.radius;
    }
    for (double a : f.confidences) {
        if (!(a > 0.0 && a < 1.0)) throw UsageError("--confidence values must lie in (0, 1)");
    }
    c.confidences = f.confidences;
    if (f.direction == "up") {
        c.directions = {Direction::up};
    } else if (f.direction == "down") {
        c.directions = {Direction::down};
    } else if (f.direction == "both") {
        c.directions = {Direction::down, Direction::up};
    }
    for (double t : f.thresholds) {
        if (!std::isfinite(t)) throw UsageError("--thresholds must be finite");
    }
    c.thresholds = f.thresholds;
    if (!f.forecasts.empty()) {
        c.forecasts = parse_colon_pair(f.forecasts, "--forecasts");
        if (!std::isfinite(c.forecasts->first) || !std::isfinite(c.forecasts->second)) {
            throw UsageError("--forecasts must be finite");
        }
    }
    for (std::size_t n : f.prefixes) {
        if (n < 1) throw UsageError("--prefix values must be >= 1");
    }
    c.prefixes = f.prefixes;
    if (!f.grid.empty()) c.grid = parse_grid(f.grid);
    c.solver = f.solver == "lp" ? SolverPath::lp_oracle : SolverPath::closed_form;
    c.timing = f.timing;
    c.format = f.format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (!f.output.empty()) c.output = f.output;
    return c;
}

template <typename Write>
void emit(const RunConfig& config, std::ostream& out, Write&& write) {
    if (!config.output) {
        write(out);
        return;
    }
    std::ofstream file(*config.output, std::ios::binary);
    if (!file) throw FormatError("cannot write '" + config.output->string() + "'");
    write(file);
    if (!file) throw FormatError("failed writing '" + config.output->string() + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Worst-case wind ramp probabilities from historical forecast errors"};
    app.require_subcommand(1);

    RawFlags flags;
    auto* pairs = app.add_subcommand("pairs", "Extract forecast-error pairs from a series");
    add_flags(pairs, flags);
    auto* est = app.add_subcommand("estimate", "Worst-case ramp probability per threshold and radius");
    add_flags(est, flags);
    add_estimation_flags(est, flags);
    est->add_flag("--timing", flags.timing, "Add a per-estimate wall-clock column");
    auto* table = app.add_subcommand("table", "Prefix x direction x threshold x confidence table");
    add_flags(table, flags);
    add_estimation_flags(table, flags);
    auto* sw = app.add_subcommand("sweep", "Worst-case ramp probability over a threshold grid");
    add_flags(sw, flags);
    add_estimation_flags(sw, flags);
    sw->add_option("--grid", flags.grid, "Threshold grid LO:HI:STEP in MW")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const RunConfig config = to_config(flags, err);
        if (pairs->parsed()) {
            emit(config, out, [&](std::ostream& o) { cmd_pairs(config, o, err); });
            return kOk;
        }
        Report report;
        if (est->parsed()) {
            report = cmd_estimate(config, err);
        } else if (table->parsed()) {
            report = cmd_table(config, err);
        } else {
            report = cmd_sweep(config, err);
            if (config.format == OutputFormat::csv && report.note) err << "note: " << *report.note << '\n';
        }
        emit(config, out, [&](std::ostream& o) {
            if (config.format == OutputFormat::json) {
                report.write_json(o);
            } else {
                report.write_csv(o);
            }
        });
        return kOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const SolverFailure& e) {
        err << "solver failure: " << e.what() << '\n';
        return kSolver;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    }
}

}  // namespace ramprisk::cli
