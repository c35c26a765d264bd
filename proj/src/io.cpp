#include "renyi/io.hpp"

#include "renyi/csv.hpp"
#include "renyi/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace renyi::io {

namespace {

std::ofstream open_out(const fs::path& path)
{
    std::error_code ec;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    return out;
}

std::string snapshot_name(std::size_t k)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%04zu.csv", k);
    return buf;
}

Json grid_json(const Grid& g)
{
    return {{"kind", to_string(g.kind())}, {"n", g.dim()}, {"extent", g.extent()}, {"points", g.size()}};
}

}  // namespace

void write_csv(const fs::path& path, const std::string& header, const std::vector<std::string>& rows)
{
    auto out = open_out(path);
    out << header << '\n';
    for (const auto& r : rows)
        out << r << '\n';
    if (!out)
        throw Error(ErrorCode::Io, "write failed: " + path.string());
}

void write_json(const fs::path& path, const Json& value)
{
    auto out = open_out(path);
    out << value.dump(2) << '\n';
    if (!out)
        throw Error(ErrorCode::Io, "write failed: " + path.string());
}

void write_density_csv(const fs::path& path, const Density& f)
{
    const auto x = f.grid().nodes();
    std::vector<std::string> rows;
    rows.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        rows.push_back(csv::join({csv::number(x[i]), csv::number(f[i])}));
    write_csv(path, f.grid().radial() ? "r,value" : "x,value", rows);
}

Density read_density_csv(const fs::path& path, const GridPtr& grid)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::Io, "cannot read " + path.string());
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> values;
    const auto x = grid->nodes();
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r")
            continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b))
            throw Error(ErrorCode::ConfigError, "malformed density row in " + path.string());
        double coord = 0.0, value = 0.0;
        try {
            coord = std::stod(a);
            value = std::stod(b);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ConfigError, "non-numeric density row in " + path.string());
        }
        const std::size_t i = values.size();
        if (i >= x.size() || std::abs(coord - x[i]) > 1e-9 * std::max(1.0, grid->extent()))
            throw Error(ErrorCode::ConfigError, "density file coordinates do not match the configured grid");
        values.push_back(value);
    }
    if (values.size() != x.size())
        throw Error(ErrorCode::ConfigError, "density file has " + std::to_string(values.size()) +
                                                " rows, grid has " + std::to_string(x.size()));
    return Density(grid, std::move(values));
}

Json density_json(const Density& f)
{
    Json j = grid_json(f.grid());
    j["values"] = std::vector<double>(f.values().begin(), f.values().end());
    return j;
}

Density density_from_json(const Json& record)
{
    try {
        const auto kind = grid_kind_from_string(record.at("kind").get<std::string>());
        auto grid = make_grid(kind, record.at("n").get<int>(), record.at("extent").get<double>(),
                              record.at("points").get<std::size_t>());
        return Density(grid, record.at("values").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigError, std::string("malformed density record: ") + e.what());
    }
}

Json profile_json(const SteadyProfile& profile)
{
    return {{"p", profile.p},         {"n", profile.n},           {"C_B", profile.c_b},
            {"sigma", profile.sigma}, {"lambda", profile.lambda}, {"E0", profile.energy}};
}

Json solver_config_json(const SolverConfig& config)
{
    return {{"p", config.p},
            {"n", config.n},
            {"scheme", "explicit-fv"},
            {"cfl", config.cfl},
            {"t_end", config.t_end},
            {"snapshot_times", config.snapshot_times},
            {"value_floor", config.value_floor}};
}

void write_trajectory(const fs::path& dir, const Trajectory& traj)
{
    Json manifest;
    manifest["config"] = solver_config_json(traj.config);
    manifest["provenance"] = to_string(traj.provenance);
    if (!traj.snapshots.empty())
        manifest["grid"] = grid_json(traj.snapshots.front().density.grid());
    Json times = Json::array(), masses = Json::array(), energies = Json::array(), files = Json::array();
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        const auto& s = traj.snapshots[k];
        write_density_csv(dir / snapshot_name(k), s.density);
        times.push_back(s.t);
        masses.push_back(s.density.mass());
        energies.push_back(s.energy);
        files.push_back(snapshot_name(k));
    }
    manifest["times"] = times;
    manifest["masses"] = masses;
    manifest["energies"] = energies;
    manifest["files"] = files;
    manifest["stats"] = {{"steps", traj.stats.steps},
                         {"clamped", traj.stats.clamped},
                         {"floor_mass", traj.stats.floor_mass},
                         {"floor_energy", traj.stats.floor_energy},
                         {"max_mass_drift", traj.stats.max_mass_drift}};
    write_json(dir / "manifest.json", manifest);
}

void write_scaled(const fs::path& dir, const ScaledTrajectory& scaled)
{
    Json manifest;
    manifest["config"] = solver_config_json(scaled.config);
    manifest["provenance"] = to_string(scaled.provenance);
    manifest["E0"] = scaled.E0;
    Json times = Json::array(), taus = Json::array(), masses = Json::array(), energies = Json::array(),
         dilations = Json::array(), files = Json::array();
    for (std::size_t k = 0; k < scaled.entries.size(); ++k) {
        const auto& e = scaled.entries[k];
        write_density_csv(dir / snapshot_name(k), e.u);
        times.push_back(e.t);
        taus.push_back(e.tau);
        masses.push_back(e.u.mass());
        energies.push_back(e.u.energy());
        dilations.push_back(e.dilation);
        files.push_back(snapshot_name(k));
    }
    manifest["times"] = times;
    manifest["tau"] = taus;
    manifest["masses"] = masses;
    manifest["energies"] = energies;
    manifest["dilations"] = dilations;
    manifest["files"] = files;
    write_json(dir / "manifest.json", manifest);
}

}  // namespace renyi::io
