#pragma once

#include "renyi/error.hpp"
#include "renyi/grid.hpp"
#include "renyi/io.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace renyi::harness {

enum class Scenario { Heat, PME, FastDiffusion, InequalitySweep, RateComparison };
enum class Datum { Gaussian, Barenblatt, TwoBump, UniformBox, PerturbedBarenblatt, Custom };

const char* to_string(Scenario scenario);
const char* to_string(Datum datum);
Scenario scenario_from_string(const std::string& name);
Datum datum_from_string(const std::string& name);

struct GridSpec {
    GridKind kind = GridKind::Line1D;
    double extent = 10.0;
    std::size_t points = 1001;
};

struct ExperimentConfig {
    Scenario scenario = Scenario::Heat;
    double p = 1.0;
    int n = 1;
    double E0 = 1.0;
    GridSpec grid;
    Datum initial_datum = Datum::TwoBump;
    /// Custom datum: a density CSV on the configured grid, or a JSON density record.
    io::fs::path datum_file;
    double t_end = 1.0;
    std::size_t snapshot_count = 20;
    std::uint64_t seed = 1234;
    io::fs::path output_dir = "renyi-out";
    double cfl = 0.4;
    /// Random densities per exponent (inequality sweep) or random triples (rate comparison).
    std::size_t samples = 50;
    /// Inequality sweep exponents; empty means {p}.
    std::vector<double> exponents;
};

/// Parses a JSON config.  Missing keys take scenario defaults; unknown keys are an error.
/// Relative datum_file paths resolve against base_dir.
ExperimentConfig parse_config(const io::Json& doc, const io::fs::path& base_dir = {});
ExperimentConfig load_config(const io::fs::path& path);
io::Json config_json(const ExperimentConfig& config);

/// Scenario admissibility: PME needs p > 1, fast diffusion n/(n+2) < p < 1, heat p = 1.
void validate(const ExperimentConfig& config);

std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

struct Tolerances {
    double decay_slack_linear = 1e-3;
    double decay_slack_nonlinear = 1e-2;
    double monotone = 1e-6;
    double mass_drift = 1e-8;
    double frozen_moments = 1e-6;
    double inequality_slack = 1e-6;
    double equality = 1e-4;
    double energy_rate = 2e-2;
    double concavity = 1e-3;
    double heat_l1 = 5e-3;
    double heat_clock = 1e-6;
    double rate_saturation = 1e-10;
};

struct Check {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    /// True when value must be >= limit, false when value must be <= limit.
    bool at_least = false;
    bool pass = true;
    /// Reported in the manifest but not part of the exit status.
    bool asserted = true;
};

struct RunSummary {
    ExperimentConfig config;
    io::fs::path directory;
    std::vector<Check> checks;
    /// Smallest asserted slack (decay or inequality); absent for rate comparison.
    std::optional<double> min_slack;
    /// Largest r2 - r1 (rate comparison) or final bound - measured (decay runs).
    std::optional<double> gap;
    /// L1 distance to the exact heat solution at t_end, when an oracle exists.
    std::optional<double> l1_error;

    bool pass() const;
};

/// Runs one experiment and writes its artifacts into out_dir.  Progress goes to log when non-null.
RunSummary run(const ExperimentConfig& config, const io::fs::path& out_dir, std::ostream* log = nullptr,
               const Tolerances& tol = {});

struct SweepRow {
    double value = 0.0;
    bool ok = false;
    int exit_code = 0;
    std::optional<RunSummary> summary;
    /// Error improvement over the previous row when the grid spacing halves.
    std::optional<double> ratio;
    std::string message;
};

struct SweepReport {
    std::string param;
    std::vector<SweepRow> rows;
    int exit_code = 0;

    static std::string csv_header();
    std::vector<std::string> csv_rows() const;
};

/// One run per value of param (p, points, t_end or E0), each in its own subdirectory,
/// fanned out over worker threads.  Writes sweep.csv into out_dir.
SweepReport sweep(const ExperimentConfig& base, const std::string& param, const std::vector<double>& values,
                  const io::fs::path& out_dir, std::ostream* log = nullptr, unsigned workers = 0);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int violation = 1;
inline constexpr int config = 2;
inline constexpr int inadmissible = 3;
inline constexpr int solver = 4;
inline constexpr int io = 5;
inline constexpr int numerical = 6;
}  // namespace exit_code

int exit_code_for(ErrorCode code);

}  // namespace renyi::harness
