#pragma once

#include "renyi/density.hpp"
#include "renyi/evolve.hpp"
#include "renyi/profiles.hpp"
#include "renyi/rescale.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace renyi::io {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

/// Two columns: x (r on radial grids), value.
void write_density_csv(const fs::path& path, const Density& f);
/// Reads a two-column density CSV whose coordinates match `grid` node for node.
Density read_density_csv(const fs::path& path, const GridPtr& grid);

/// {kind, n, extent, points, values}
Json density_json(const Density& f);
Density density_from_json(const Json& record);

/// {p, n, C_B, sigma, lambda, E0}
Json profile_json(const SteadyProfile& profile);

Json solver_config_json(const SolverConfig& config);

/// One density CSV per snapshot plus manifest.json {config, provenance, times, masses, energies}.
void write_trajectory(const fs::path& dir, const Trajectory& traj);
/// Same layout; the manifest adds E0, tau and the dilation factors.
void write_scaled(const fs::path& dir, const ScaledTrajectory& scaled);

/// Header line plus rows, newline-terminated.
void write_csv(const fs::path& path, const std::string& header, const std::vector<std::string>& rows);
void write_json(const fs::path& path, const Json& value);

}  // namespace renyi::io
