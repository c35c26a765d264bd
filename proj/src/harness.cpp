#include "renyi/harness.hpp"

#include "renyi/bounds.hpp"
#include "renyi/csv.hpp"
#include "renyi/entropy.hpp"
#include "renyi/evolve.hpp"
#include "renyi/families.hpp"
#include "renyi/profiles.hpp"
#include "renyi/rescale.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#ifndef RENYI_FLOW_VERSION
#define RENYI_FLOW_VERSION "0.0.0"
#endif

namespace renyi::harness {

namespace {

struct Named {
    const char* name;
    int value;
};

constexpr Named scenario_names[] = {
    {"heat", static_cast<int>(Scenario::Heat)},
    {"pme", static_cast<int>(Scenario::PME)},
    {"fast-diffusion", static_cast<int>(Scenario::FastDiffusion)},
    {"inequality-sweep", static_cast<int>(Scenario::InequalitySweep)},
    {"rate-comparison", static_cast<int>(Scenario::RateComparison)},
};

constexpr Named datum_names[] = {
    {"gaussian", static_cast<int>(Datum::Gaussian)},
    {"barenblatt", static_cast<int>(Datum::Barenblatt)},
    {"two-bump", static_cast<int>(Datum::TwoBump)},
    {"uniform-box", static_cast<int>(Datum::UniformBox)},
    {"perturbed-barenblatt", static_cast<int>(Datum::PerturbedBarenblatt)},
    {"custom", static_cast<int>(Datum::Custom)},
};

template <std::size_t N>
const char* name_of(const Named (&table)[N], int value)
{
    for (const auto& e : table)
        if (e.value == value)
            return e.name;
    return "unknown";
}

template <std::size_t N>
int value_of(const Named (&table)[N], const std::string& name, const char* what)
{
    for (const auto& e : table)
        if (name == e.name)
            return e.value;
    std::string choices;
    for (const auto& e : table)
        choices += std::string(choices.empty() ? "" : ", ") + e.name;
    throw Error(ErrorCode::ConfigError, "unknown " + std::string(what) + " '" + name + "' (expected one of " + choices + ")");
}

double default_p(Scenario s)
{
    switch (s) {
    case Scenario::PME: return 2.0;
    case Scenario::FastDiffusion: return 0.75;
    default: return 1.0;
    }
}

template <class T>
T get(const io::Json& doc, const char* key, T fallback)
{
    if (!doc.contains(key))
        return fallback;
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::ConfigError, std::string("config key '") + key + "' has the wrong type");
    }
}

std::string format_value(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Reporter {
public:
    explicit Reporter(std::ostream* log) : log_(log) {}

    void note(const std::string& text)
    {
        if (log_)
            *log_ << text << '\n';
    }

    void check(std::vector<Check>& checks, std::string name, double value, double limit, bool at_least,
               bool asserted = true)
    {
        Check c{std::move(name), value, limit, at_least, at_least ? value >= limit : value <= limit, asserted};
        if (std::isnan(value))
            c.pass = false;
        if (log_) {
            const char* tag = c.pass ? "ok" : asserted ? "FAIL" : "warn";
            char buf[256];
            std::snprintf(buf, sizeof buf, "  [%s] %-28s %.6g %s %.3g", tag, c.name.c_str(), c.value,
                          at_least ? ">=" : "<=", c.limit);
            *log_ << buf << '\n';
        }
        checks.push_back(std::move(c));
    }

private:
    std::ostream* log_;
};

struct InitialData {
    Density density;
    /// Gaussian components of the datum when the heat flow has a closed form.
    std::optional<std::vector<GaussianParams>> heat_oracle;
};

InitialData make_datum(const ExperimentConfig& cfg, const GridPtr& grid)
{
    const bool radial = grid->radial();
    switch (cfg.initial_datum) {
    case Datum::Gaussian: {
        std::vector<GaussianParams> comps{{cfg.n, cfg.E0 / cfg.n, 0.0, 1.0}};
        return {gaussian_mixture(grid, comps), comps};
    }
    case Datum::Barenblatt: {
        if (is_shannon(cfg.p)) {
            std::vector<GaussianParams> comps{{cfg.n, cfg.E0 / cfg.n, 0.0, 1.0}};
            return {gaussian_mixture(grid, comps), comps};
        }
        auto matched = matched_profile(cfg.p, cfg.n, cfg.E0, grid);
        if (!matched.density.tail())
            return {matched.density, std::nullopt};
        // The solver evolves what lies on the grid; fast-diffusion tails are cut and the rest renormalized.
        return {normalize(matched.density.without_tail(), cfg.E0), std::nullopt};
    }
    case Datum::TwoBump: {
        auto comps = two_bump_components(cfg.n, cfg.E0, radial);
        return {gaussian_mixture(grid, comps), comps};
    }
    case Datum::UniformBox:
        return {uniform_box(grid, cfg.E0), std::nullopt};
    case Datum::PerturbedBarenblatt:
        return {perturbed_barenblatt(cfg.p, grid, cfg.E0), std::nullopt};
    case Datum::Custom: {
        if (cfg.datum_file.empty())
            throw Error(ErrorCode::ConfigError, "initial_datum 'custom' needs datum_file");
        if (cfg.datum_file.extension() == ".json") {
            std::ifstream in(cfg.datum_file);
            if (!in)
                throw Error(ErrorCode::Io, "cannot read " + cfg.datum_file.string());
            io::Json doc;
            try {
                in >> doc;
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorCode::ConfigError, std::string("malformed datum file: ") + e.what());
            }
            auto f = io::density_from_json(doc);
            if (!(f.grid() == *grid))
                throw Error(ErrorCode::ConfigError, "datum file grid differs from the configured grid");
            std::vector<double> values(f.values().begin(), f.values().end());
            return {normalize(Density(grid, std::move(values)), cfg.E0), std::nullopt};
        }
        return {normalize(io::read_density_csv(cfg.datum_file, grid), cfg.E0), std::nullopt};
    }
    }
    throw Error(ErrorCode::ConfigError, "unknown initial datum");
}

double moment_error(const Density& u, double E0)
{
    return std::max({std::abs(u.mass() - 1.0), std::abs(u.mean()), std::abs(u.energy() - E0) / E0});
}

std::vector<std::string> labelled(const std::string& label, const std::vector<std::string>& rows)
{
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back(csv::field(label) + "," + r);
    return out;
}

const std::set<std::string> fisher_rows{"mckean", "renyi-iso", "log-sobolev", "isoperimetric"};

void run_evolution(const ExperimentConfig& cfg, const io::fs::path& dir, const Tolerances& tol, Reporter& rep,
                   RunSummary& summary)
{
    const auto grid = make_grid(cfg.grid.kind, cfg.n, cfg.grid.extent, cfg.grid.points);
    auto datum = make_datum(cfg, grid);

    SolverConfig sc;
    sc.p = cfg.p;
    sc.n = cfg.n;
    sc.cfl = cfg.cfl;
    sc.t_end = cfg.t_end;
    sc.snapshot_times = uniform_times(cfg.t_end, cfg.snapshot_count);
    rep.note("solving " + std::string(to_string(cfg.scenario)) + " p=" + format_value(cfg.p) + " n=" +
             std::to_string(cfg.n) + " to t=" + format_value(cfg.t_end));
    const auto traj = solve(datum.density, sc);
    io::write_trajectory(dir / "trajectory", traj);

    const auto scaled = to_scaled(traj);
    io::write_scaled(dir / "scaled", scaled);

    const bool heat = cfg.scenario == Scenario::Heat;
    const auto curve = verify_decay(traj, cfg.p);
    io::write_csv(dir / "decay_curve.csv", DecayCurve::csv_header(), curve.csv_rows());
    summary.min_slack = curve.min_slack();
    summary.gap = curve.entries.back().slack;

    // Functionals of the scaled densities against the fixed steady state.
    const auto matched = matched_profile(cfg.p, cfg.n, scaled.E0, grid);
    std::vector<std::string> entropy_rows;
    for (const auto& e : scaled.entries) {
        const auto r = entropy_report(e.u, cfg.p, &matched.density);
        entropy_rows.push_back(csv::number(e.t) + "," + csv::number(e.tau) + "," + r.to_csv_row());
    }
    io::write_csv(dir / "entropy.csv", "t,tau," + EntropyReport::csv_header(), entropy_rows);

    std::vector<std::string> ineq_rows;
    double ineq_min = std::numeric_limits<double>::infinity();
    for (const auto* e : {&scaled.entries.front(), &scaled.entries.back()}) {
        auto suite = inequality_suite(e->u, cfg.p);
        // Fisher rows on evolved snapshots measure the discretization near a
        // free boundary or a truncated tail; they are reported, not gated.
        for (auto& row : suite.rows)
            if (fisher_rows.count(row.name))
                row.asserted = false;
        ineq_min = std::min(ineq_min, suite.min_slack());
        const auto rows = labelled("t=" + format_value(e->t), suite.csv_rows());
        ineq_rows.insert(ineq_rows.end(), rows.begin(), rows.end());
    }
    io::write_csv(dir / "inequalities.csv", "label," + InequalityReport::csv_header(), ineq_rows);

    double frozen = 0.0;
    for (const auto& e : scaled.entries)
        frozen = std::max(frozen, moment_error(e.u, scaled.E0));
    const auto rate = energy_rate_check(traj);
    const auto concavity = concavity_check(traj, cfg.p);

    auto& c = summary.checks;
    rep.check(c, "decay-slack", curve.min_slack(), heat ? -tol.decay_slack_linear : -tol.decay_slack_nonlinear, true);
    // Fast-diffusion runs cut the algebraic tail at the grid edge, which
    // leaves a small floor under the relative entropy late in the run.
    rep.check(c, "decay-monotone", curve.max_increase(), tol.monotone, false,
              cfg.scenario != Scenario::FastDiffusion);
    rep.check(c, "mass-drift", traj.stats.max_mass_drift, tol.mass_drift, false);
    rep.check(c, "energy-rate", rate.max_relative_mismatch, tol.energy_rate, false);
    rep.check(c, "frozen-moments", frozen, tol.frozen_moments, false);
    rep.check(c, "entropy-power-concavity", concavity.max_relative, tol.concavity, false);
    rep.check(c, "inequality-slack", ineq_min, -tol.inequality_slack, true);

    if (heat) {
        const auto taus = tau_of_t(traj);
        double clock = 0.0;
        for (std::size_t k = 0; k < taus.size(); ++k) {
            const double t = traj.snapshots[k].t;
            const double expected = scaled.E0 / (2.0 * cfg.n) * std::log1p(2.0 * cfg.n * t / scaled.E0);
            clock = std::max(clock, std::abs(taus[k] - expected));
        }
        rep.check(c, "heat-clock", clock, tol.heat_clock, false);
        if (datum.heat_oracle) {
            const auto exact = exact_heat_mixture(grid, *datum.heat_oracle, {cfg.t_end});
            summary.l1_error = l1_distance(traj.snapshots.back().density, exact.snapshots.back().density);
            rep.check(c, "l1-vs-exact", *summary.l1_error, tol.heat_l1, false);
        }
    }
}

void run_inequality_sweep(const ExperimentConfig& cfg, const io::fs::path& dir, const Tolerances& tol,
                          Reporter& rep, RunSummary& summary)
{
    const auto grid = make_grid(cfg.grid.kind, cfg.n, cfg.grid.extent, cfg.grid.points);
    const auto exponents = cfg.exponents.empty() ? std::vector<double>{cfg.p} : cfg.exponents;
    for (double p : exponents)
        require_admissible(p, cfg.n);

    std::vector<std::string> rows;
    double random_min = std::numeric_limits<double>::infinity();
    double equality_max = 0.0;
    for (double p : exponents) {
        rep.note("inequality suite p=" + format_value(p) + " over " + std::to_string(cfg.samples) + " samples");
        std::mt19937_64 rng(cfg.seed);
        for (std::size_t k = 0; k < cfg.samples; ++k) {
            const auto f = random_mixture(grid, cfg.E0, rng);
            const auto suite = inequality_suite(f, p);
            random_min = std::min(random_min, suite.min_slack());
            const auto r = labelled("sample-" + std::to_string(k), suite.csv_rows());
            rows.insert(rows.end(), r.begin(), r.end());
        }
        // Compactly supported profiles get a grid fitted to their support so
        // the free-boundary layer of the Fisher estimate stays thin.
        auto matched = matched_profile(p, cfg.n, cfg.E0, grid);
        const double radius = matched.profile.support_radius();
        if (std::isfinite(radius) && 1.5 * radius < cfg.grid.extent)
            matched = matched_profile(p, cfg.n, cfg.E0,
                                      make_grid(cfg.grid.kind, cfg.n, 1.5 * radius, cfg.grid.points));
        const auto suite = inequality_suite(matched.density, p);
        // Every asserted row is an identity on the steady state itself.
        for (const auto& row : suite.rows)
            if (row.applicable && row.asserted)
                equality_max = std::max(equality_max, std::abs(row.slack));
        const auto r = labelled("matched", suite.csv_rows());
        rows.insert(rows.end(), r.begin(), r.end());
    }
    io::write_csv(dir / "inequalities.csv", "label," + InequalityReport::csv_header(), rows);
    summary.min_slack = random_min;
    rep.check(summary.checks, "inequality-slack", random_min, -tol.inequality_slack, true);
    rep.check(summary.checks, "equality-cases", equality_max, tol.equality, false);
}

void run_rate_comparison(const ExperimentConfig& cfg, const io::fs::path& dir, const Tolerances& tol,
                         Reporter& rep, RunSummary& summary)
{
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> h_dist(0.01, 5.0), e_dist(0.1, 10.0);
    std::uniform_int_distribution<int> n_dist(1, 3);
    std::vector<std::string> rows;
    bool ordered = true, saturated = true;
    double max_gap = 0.0;
    for (std::size_t k = 0; k < cfg.samples; ++k) {
        const double h0 = h_dist(rng);
        const double e0 = e_dist(rng);
        const int n = n_dist(rng);
        const auto taus = default_tau_grid(e0, n);
        const auto table = compare_rates(h0, e0, n, taus);
        ordered = ordered && table.ordered;
        saturated = saturated && table.saturated;
        max_gap = std::max(max_gap, table.max_gap);
        const std::string prefix = std::to_string(k) + "," + csv::number(h0) + "," + csv::number(e0) + "," +
                                   std::to_string(n) + ",";
        for (const auto& r : table.csv_rows())
            rows.push_back(prefix + r);
    }
    io::write_csv(dir / "rates.csv", "sample,H0,E0,n," + RateTable::csv_header(), rows);
    summary.gap = max_gap;
    rep.note("compared rates on " + std::to_string(cfg.samples) + " random triples");
    rep.check(summary.checks, "rate-ordered", ordered ? 1.0 : 0.0, 1.0, true);
    rep.check(summary.checks, "rate-saturated", saturated ? 0.0 : 1.0, tol.rate_saturation, false);
}

io::Json tolerances_json(const Tolerances& t)
{
    return {{"decay_slack_linear", t.decay_slack_linear},
            {"decay_slack_nonlinear", t.decay_slack_nonlinear},
            {"monotone", t.monotone},
            {"mass_drift", t.mass_drift},
            {"frozen_moments", t.frozen_moments},
            {"inequality_slack", t.inequality_slack},
            {"equality", t.equality},
            {"energy_rate", t.energy_rate},
            {"concavity", t.concavity},
            {"heat_l1", t.heat_l1},
            {"heat_clock", t.heat_clock},
            {"rate_saturation", t.rate_saturation}};
}

}  // namespace

const char* to_string(Scenario scenario) { return name_of(scenario_names, static_cast<int>(scenario)); }
const char* to_string(Datum datum) { return name_of(datum_names, static_cast<int>(datum)); }

Scenario scenario_from_string(const std::string& name)
{
    return static_cast<Scenario>(value_of(scenario_names, name, "scenario"));
}

Datum datum_from_string(const std::string& name)
{
    return static_cast<Datum>(value_of(datum_names, name, "initial_datum"));
}

ExperimentConfig parse_config(const io::Json& doc, const io::fs::path& base_dir)
{
    if (!doc.is_object())
        throw Error(ErrorCode::ConfigError, "config must be a JSON object");
    static const std::set<std::string> known{"scenario", "p",       "n",        "E0",          "grid",
                                             "initial_datum", "datum_file", "t_end", "snapshot_count",
                                             "seed",     "output_dir", "cfl",   "samples",     "exponents"};
    for (const auto& [key, value] : doc.items())
        if (!known.count(key))
            throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");
    if (!doc.contains("scenario"))
        throw Error(ErrorCode::ConfigError, "config needs a 'scenario'");

    ExperimentConfig cfg;
    cfg.scenario = scenario_from_string(get<std::string>(doc, "scenario", ""));
    cfg.p = get(doc, "p", default_p(cfg.scenario));
    cfg.n = get(doc, "n", 1);
    cfg.E0 = get(doc, "E0", 1.0);
    cfg.grid.kind = cfg.n == 1 ? GridKind::Line1D : GridKind::RadialND;
    if (doc.contains("grid")) {
        const auto& g = doc.at("grid");
        if (!g.is_object())
            throw Error(ErrorCode::ConfigError, "config key 'grid' must be an object");
        for (const auto& [key, value] : g.items())
            if (key != "kind" && key != "extent" && key != "points")
                throw Error(ErrorCode::ConfigError, "unknown grid key '" + key + "'");
        if (g.contains("kind")) {
            try {
                cfg.grid.kind = grid_kind_from_string(get<std::string>(g, "kind", ""));
            } catch (const Error& e) {
                throw Error(ErrorCode::ConfigError, e.what());
            }
        }
        cfg.grid.extent = get(g, "extent", cfg.grid.extent);
        cfg.grid.points = get(g, "points", cfg.grid.points);
    }
    cfg.initial_datum = datum_from_string(get<std::string>(doc, "initial_datum", "two-bump"));
    if (doc.contains("datum_file")) {
        io::fs::path file = get<std::string>(doc, "datum_file", "");
        cfg.datum_file = file.is_relative() && !base_dir.empty() ? base_dir / file : file;
    }
    cfg.t_end = get(doc, "t_end", cfg.t_end);
    cfg.snapshot_count = get(doc, "snapshot_count", cfg.snapshot_count);
    cfg.seed = get(doc, "seed", cfg.seed);
    cfg.output_dir = get<std::string>(doc, "output_dir", cfg.output_dir.string());
    cfg.cfl = get(doc, "cfl", cfg.cfl);
    cfg.samples = get(doc, "samples", cfg.samples);
    cfg.exponents = get(doc, "exponents", cfg.exponents);
    return cfg;
}

ExperimentConfig load_config(const io::fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::Io, "cannot read config " + path.string());
    io::Json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigError, "config parse error in " + path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

io::Json config_json(const ExperimentConfig& c)
{
    io::Json j;
    j["scenario"] = to_string(c.scenario);
    j["p"] = c.p;
    j["n"] = c.n;
    j["E0"] = c.E0;
    j["grid"] = {{"kind", renyi::to_string(c.grid.kind)}, {"extent", c.grid.extent}, {"points", c.grid.points}};
    j["initial_datum"] = to_string(c.initial_datum);
    if (!c.datum_file.empty())
        j["datum_file"] = c.datum_file.string();
    j["t_end"] = c.t_end;
    j["snapshot_count"] = c.snapshot_count;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir.string();
    j["cfl"] = c.cfl;
    j["samples"] = c.samples;
    j["exponents"] = c.exponents;
    return j;
}

void validate(const ExperimentConfig& c)
{
    if (c.n < 1 || c.n > 3)
        throw Error(ErrorCode::ConfigError, "n must be 1, 2 or 3");
    if (c.n > 1 && c.grid.kind != GridKind::RadialND)
        throw Error(ErrorCode::ConfigError, "n > 1 needs a RadialND grid");
    if (c.n == 1 && c.grid.kind != GridKind::Line1D)
        throw Error(ErrorCode::ConfigError, "n = 1 needs a Line1D grid");
    if (!(c.E0 > 0.0) || !std::isfinite(c.E0))
        throw Error(ErrorCode::ConfigError, "E0 must be positive");
    if (!(c.grid.extent > 0.0) || c.grid.points < Grid::min_points)
        throw Error(ErrorCode::ConfigError, "grid needs a positive extent and at least " +
                                                std::to_string(Grid::min_points) + " points");

    const bool evolution = c.scenario == Scenario::Heat || c.scenario == Scenario::PME ||
                           c.scenario == Scenario::FastDiffusion;
    if (evolution) {
        if (!(c.t_end > 0.0) || !std::isfinite(c.t_end))
            throw Error(ErrorCode::ConfigError, "t_end must be positive");
        if (c.snapshot_count < 3)
            throw Error(ErrorCode::ConfigError, "snapshot_count must be at least 3");
        if (!(c.cfl > 0.0) || c.cfl > 1.0)
            throw Error(ErrorCode::ConfigError, "cfl must lie in (0, 1]");
    } else if (c.samples == 0) {
        throw Error(ErrorCode::ConfigError, "samples must be positive");
    }

    const double bar = critical_exponent(c.n);
    switch (c.scenario) {
    case Scenario::Heat:
        if (c.p != 1.0)
            throw Error(ErrorCode::InadmissibleExponent, "inadmissible exponent: the heat scenario needs p = 1");
        break;
    case Scenario::PME:
        if (!(c.p > 1.0))
            throw Error(ErrorCode::InadmissibleExponent, "inadmissible exponent: the porous medium scenario needs p > 1");
        break;
    case Scenario::FastDiffusion:
        if (!(c.p > bar && c.p < 1.0))
            throw Error(ErrorCode::InadmissibleExponent,
                        "inadmissible exponent: fast diffusion needs " + format_value(bar) + " < p < 1");
        break;
    case Scenario::InequalitySweep:
        for (double p : c.exponents.empty() ? std::vector<double>{c.p} : c.exponents)
            require_admissible(p, c.n);
        break;
    case Scenario::RateComparison:
        break;
    }
}

std::vector<std::string> preset_names()
{
    return {"heat-twobump", "heat-gaussian", "pme-barenblatt", "pme-twobump", "fd-perturbed", "pme-perturbed",
            "inequality-sweep", "rate-comparison"};
}

ExperimentConfig preset(const std::string& name)
{
    ExperimentConfig c;
    c.output_dir = name;
    if (name == "heat-twobump") {
        c.scenario = Scenario::Heat;
        c.grid = {GridKind::Line1D, 30.0, 2001};
        c.initial_datum = Datum::TwoBump;
        c.t_end = 5.0;
    } else if (name == "heat-gaussian") {
        c.scenario = Scenario::Heat;
        c.initial_datum = Datum::Gaussian;
    } else if (name == "pme-barenblatt") {
        c.scenario = Scenario::PME;
        c.p = 2.0;
        c.grid = {GridKind::Line1D, 5.0, 1001};
        c.initial_datum = Datum::Barenblatt;
        c.t_end = 2.0;
    } else if (name == "pme-twobump") {
        c.scenario = Scenario::PME;
        c.p = 2.0;
        c.grid = {GridKind::Line1D, 5.0, 1001};
        c.initial_datum = Datum::TwoBump;
        c.t_end = 2.0;
    } else if (name == "pme-perturbed") {
        c.scenario = Scenario::PME;
        c.p = 2.0;
        c.grid = {GridKind::Line1D, 5.0, 1001};
        c.initial_datum = Datum::PerturbedBarenblatt;
        c.t_end = 2.0;
    } else if (name == "fd-perturbed") {
        c.scenario = Scenario::FastDiffusion;
        c.p = 0.75;
        c.grid = {GridKind::Line1D, 20.0, 1001};
        c.initial_datum = Datum::PerturbedBarenblatt;
        c.t_end = 1.0;
    } else if (name == "inequality-sweep") {
        c.scenario = Scenario::InequalitySweep;
        c.grid = {GridKind::Line1D, 12.0, 2001};
        c.exponents = {0.75, 1.0, 2.0};
        c.samples = 50;
    } else if (name == "rate-comparison") {
        c.scenario = Scenario::RateComparison;
        c.samples = 20;
    } else {
        std::string names;
        for (const auto& n : preset_names())
            names += (names.empty() ? "" : ", ") + n;
        throw Error(ErrorCode::ConfigError, "unknown preset '" + name + "' (available: " + names + ")");
    }
    return c;
}

bool RunSummary::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || !c.asserted; });
}

RunSummary run(const ExperimentConfig& config, const io::fs::path& out_dir, std::ostream* log, const Tolerances& tol)
{
    validate(config);
    std::error_code ec;
    io::fs::create_directories(out_dir, ec);
    if (ec)
        throw Error(ErrorCode::Io, "cannot create " + out_dir.string() + ": " + ec.message());

    Reporter rep(log);
    RunSummary summary;
    summary.config = config;
    summary.directory = out_dir;
    switch (config.scenario) {
    case Scenario::Heat:
    case Scenario::PME:
    case Scenario::FastDiffusion:
        run_evolution(config, out_dir, tol, rep, summary);
        break;
    case Scenario::InequalitySweep:
        run_inequality_sweep(config, out_dir, tol, rep, summary);
        break;
    case Scenario::RateComparison:
        run_rate_comparison(config, out_dir, tol, rep, summary);
        break;
    }

    io::Json manifest;
    manifest["tool"] = "renyi-flow";
    manifest["version"] = RENYI_FLOW_VERSION;
    manifest["timestamp"] = timestamp();
    manifest["config"] = config_json(config);
    manifest["tolerances"] = tolerances_json(tol);
    io::Json checks = io::Json::array();
    for (const auto& c : summary.checks)
        checks.push_back({{"name", c.name}, {"value", c.value}, {"limit", c.limit},
                          {"relation", c.at_least ? ">=" : "<="}, {"asserted", c.asserted}, {"pass", c.pass}});
    manifest["checks"] = checks;
    io::Json s;
    s["min_slack"] = summary.min_slack ? io::Json(*summary.min_slack) : io::Json(nullptr);
    s["gap"] = summary.gap ? io::Json(*summary.gap) : io::Json(nullptr);
    s["l1_error"] = summary.l1_error ? io::Json(*summary.l1_error) : io::Json(nullptr);
    manifest["summary"] = s;
    manifest["pass"] = summary.pass();
    io::write_json(out_dir / "manifest.json", manifest);
    rep.note(std::string(summary.pass() ? "PASS" : "FAIL") + "  artifacts in " + out_dir.string());
    return summary;
}

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::LengthMismatch:
    case ErrorCode::TooCoarse:
    case ErrorCode::TooFewSnapshots:
    case ErrorCode::NonuniformSpacing:
        return exit_code::config;
    case ErrorCode::InadmissibleExponent:
        return exit_code::inadmissible;
    case ErrorCode::SolverAbort:
        return exit_code::solver;
    case ErrorCode::Io:
        return exit_code::io;
    case ErrorCode::ZeroMass:
    case ErrorCode::ZeroEnergy:
    case ErrorCode::SupportOverflow:
    case ErrorCode::GridTooSmall:
    case ErrorCode::RootFinderFailed:
    case ErrorCode::RelativeEntropyUndefined:
        return exit_code::numerical;
    }
    return exit_code::config;
}

std::string SweepReport::csv_header() { return "param,value,status,exit_code,min_slack,gap,l1_error,ratio,message"; }

std::vector<std::string> SweepReport::csv_rows() const
{
    std::vector<std::string> out;
    for (const auto& r : rows) {
        const auto* s = r.summary ? &*r.summary : nullptr;
        const char* status = !r.ok ? "error" : (s && s->pass() ? "pass" : "violation");
        out.push_back(csv::join({csv::field(param), format_value(r.value), status, std::to_string(r.exit_code),
                                 csv::number(s ? s->min_slack : std::nullopt), csv::number(s ? s->gap : std::nullopt),
                                 csv::number(s ? s->l1_error : std::nullopt), csv::number(r.ratio),
                                 csv::field(r.message)}));
    }
    return out;
}

SweepReport sweep(const ExperimentConfig& base, const std::string& param, const std::vector<double>& values,
                  const io::fs::path& out_dir, std::ostream* log, unsigned workers)
{
    if (values.empty())
        throw Error(ErrorCode::InvalidArgument, "empty sweep");
    if (param != "p" && param != "points" && param != "t_end" && param != "E0")
        throw Error(ErrorCode::ConfigError, "unknown sweep parameter '" + param + "' (expected p, points, t_end or E0)");

    SweepReport report;
    report.param = param;
    report.rows.resize(values.size());

    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < values.size(); k = next++) {
            SweepRow& row = report.rows[k];
            row.value = values[k];
            ExperimentConfig cfg = base;
            if (param == "p")
                cfg.p = values[k];
            else if (param == "points")
                cfg.grid.points = static_cast<std::size_t>(std::llround(values[k]));
            else if (param == "t_end")
                cfg.t_end = values[k];
            else
                cfg.E0 = values[k];
            const auto dir = out_dir / (param + "=" + format_value(values[k]));
            try {
                row.summary = run(cfg, dir, nullptr);
                row.ok = true;
                row.exit_code = row.summary->pass() ? exit_code::ok : exit_code::violation;
                std::string failed, warned;
                for (const auto& c : row.summary->checks)
                    if (!c.pass)
                        (c.asserted ? failed : warned) += (c.asserted ? failed : warned).empty() ? c.name : ", " + c.name;
                if (!failed.empty())
                    row.message = "failed: " + failed;
                if (!warned.empty())
                    row.message += (row.message.empty() ? "" : "; ") + std::string("warning: ") + warned;
            } catch (const Error& e) {
                row.exit_code = exit_code_for(e.code());
                row.message = e.what();
            } catch (const std::exception& e) {
                row.exit_code = exit_code::config;
                row.message = e.what();
            }
            if (log) {
                std::lock_guard lock(log_mutex);
                *log << "  " << param << "=" << format_value(values[k]) << ": "
                     << (!row.ok ? "error" : row.exit_code == 0 ? "pass" : "violation")
                     << (row.message.empty() ? "" : " (" + row.message + ")") << '\n';
            }
        }
    };
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(values.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    if (param == "points") {
        for (std::size_t k = 1; k < report.rows.size(); ++k) {
            const auto& prev = report.rows[k - 1];
            auto& cur = report.rows[k];
            if (!prev.summary || !cur.summary || !prev.summary->l1_error || !cur.summary->l1_error)
                continue;
            const double cells_prev = prev.value - 1.0, cells_cur = cur.value - 1.0;
            if (std::abs(cells_cur - 2.0 * cells_prev) < 0.5)
                cur.ratio = *prev.summary->l1_error / *cur.summary->l1_error;
        }
    }

    const bool all_failed =
        std::none_of(report.rows.begin(), report.rows.end(), [](const SweepRow& r) { return r.ok; });
    const bool any_violation = std::any_of(report.rows.begin(), report.rows.end(),
                                           [](const SweepRow& r) { return r.exit_code != exit_code::ok; });
    report.exit_code = all_failed ? report.rows.front().exit_code : any_violation ? exit_code::violation : exit_code::ok;

    io::write_csv(out_dir / "sweep.csv", SweepReport::csv_header(), report.csv_rows());
    return report;
}

}  // namespace renyi::harness
