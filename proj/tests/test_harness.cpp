#include "renyi/error.hpp"
#include "renyi/families.hpp"
#include "renyi/harness.hpp"
#include "renyi/io.hpp"
#include "renyi/profiles.hpp"

#include <doctest.h>

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

using namespace renyi;
namespace h = renyi::harness;

namespace {

io::fs::path scratch(const std::string& name)
{
    auto dir = io::fs::temp_directory_path() / ("renyi-tests-" + name);
    io::fs::remove_all(dir);
    io::fs::create_directories(dir);
    return dir;
}

std::string slurp(const io::fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

ErrorCode code_of(auto fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Io;
}

h::ExperimentConfig small_heat()
{
    h::ExperimentConfig c;
    c.scenario = h::Scenario::Heat;
    c.grid = {GridKind::Line1D, 10.0, 201};
    c.initial_datum = h::Datum::Gaussian;
    c.t_end = 0.5;
    c.snapshot_count = 5;
    return c;
}

}  // namespace

TEST_CASE("density CSV round trip")
{
    const auto dir = scratch("csv");
    const auto g = make_grid(GridKind::RadialND, 3, 12.0, 301);
    const auto f = gaussian_matched(3, 3.0, g).density;
    io::write_density_csv(dir / "f.csv", f);
    CHECK(slurp(dir / "f.csv").rfind("r,value\n", 0) == 0);
    const auto back = io::read_density_csv(dir / "f.csv", g);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(back[i] == doctest::Approx(f[i]).epsilon(1e-15));

    // Wrong grid: coordinates do not match.
    const auto other = make_grid(GridKind::RadialND, 3, 11.0, 301);
    CHECK(code_of([&] { io::read_density_csv(dir / "f.csv", other); }) == ErrorCode::ConfigError);
    CHECK(code_of([&] { io::read_density_csv(dir / "missing.csv", g); }) == ErrorCode::Io);
}

TEST_CASE("density JSON round trip")
{
    const auto g = make_grid(GridKind::Line1D, 1, 8.0, 101);
    const auto f = gaussian_matched(1, 1.0, g).density;
    const auto back = io::density_from_json(io::density_json(f));
    CHECK(back.grid() == f.grid());
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(back[i] == f[i]);
    CHECK(code_of([] { io::density_from_json(io::Json{{"kind", "Line1D"}}); }) == ErrorCode::ConfigError);
}

TEST_CASE("config parsing")
{
    const auto doc = io::Json::parse(R"({
        "scenario": "pme", "p": 2.5, "n": 1, "E0": 2.0,
        "grid": {"kind": "Line1D", "extent": 6, "points": 801},
        "initial_datum": "perturbed-barenblatt", "t_end": 1.5, "snapshot_count": 12,
        "seed": 7, "output_dir": "out", "cfl": 0.3
    })");
    const auto c = h::parse_config(doc);
    CHECK(c.scenario == h::Scenario::PME);
    CHECK(c.p == 2.5);
    CHECK(c.E0 == 2.0);
    CHECK(c.grid.extent == 6.0);
    CHECK(c.grid.points == 801);
    CHECK(c.initial_datum == h::Datum::PerturbedBarenblatt);
    CHECK(c.snapshot_count == 12);
    CHECK(c.seed == 7);
    CHECK(c.cfl == 0.3);

    // Round trip through config_json.
    const auto again = h::parse_config(h::config_json(c));
    CHECK(h::config_json(again) == h::config_json(c));

    CHECK(code_of([] { h::parse_config(io::Json::parse(R"({"scenario": "heat", "bogus": 1})")); }) ==
          ErrorCode::ConfigError);
    CHECK(code_of([] { h::parse_config(io::Json::parse(R"({"p": 1})")); }) == ErrorCode::ConfigError);
    CHECK(code_of([] { h::parse_config(io::Json::parse(R"({"scenario": "heat", "p": "one"})")); }) ==
          ErrorCode::ConfigError);
    CHECK(code_of([] { h::parse_config(io::Json::parse(R"({"scenario": "nope"})")); }) == ErrorCode::ConfigError);
    CHECK(code_of([] { h::load_config("/nonexistent/renyi.json"); }) == ErrorCode::Io);
}

TEST_CASE("scenario admissibility")
{
    auto c = small_heat();
    CHECK_NOTHROW(h::validate(c));
    c.p = 2.0;
    CHECK(code_of([&] { h::validate(c); }) == ErrorCode::InadmissibleExponent);
    c.scenario = h::Scenario::PME;
    CHECK_NOTHROW(h::validate(c));
    c.p = 0.9;
    CHECK(code_of([&] { h::validate(c); }) == ErrorCode::InadmissibleExponent);
    c.scenario = h::Scenario::FastDiffusion;
    CHECK_NOTHROW(h::validate(c));
    c.p = 0.2;
    CHECK(code_of([&] { h::validate(c); }) == ErrorCode::InadmissibleExponent);
    c.p = 0.75;
    c.snapshot_count = 2;
    CHECK(code_of([&] { h::validate(c); }) == ErrorCode::ConfigError);

    CHECK(h::exit_code_for(ErrorCode::InadmissibleExponent) == h::exit_code::inadmissible);
    CHECK(h::exit_code_for(ErrorCode::SolverAbort) == h::exit_code::solver);
    CHECK(h::exit_code_for(ErrorCode::Io) == h::exit_code::io);
    CHECK(h::exit_code_for(ErrorCode::ConfigError) == h::exit_code::config);
}

TEST_CASE("presets are valid")
{
    const auto names = h::preset_names();
    CHECK(names.size() >= 6);
    for (const auto& name : names) {
        CAPTURE(name);
        const auto c = h::preset(name);
        CHECK_NOTHROW(h::validate(c));
        CHECK(c.output_dir == name);
    }
    CHECK(code_of([] { h::preset("no-such-preset"); }) == ErrorCode::ConfigError);
}

TEST_CASE("a heat run writes its artifacts and passes")
{
    const auto dir = scratch("run");
    std::ostringstream log;
    const auto s = h::run(small_heat(), dir, &log);
    CHECK(s.pass());
    REQUIRE(s.l1_error.has_value());
    CHECK(*s.l1_error <= 5e-3);
    for (const char* f : {"manifest.json", "decay_curve.csv", "entropy.csv", "inequalities.csv",
                          "trajectory/manifest.json", "trajectory/snapshot_0000.csv", "scaled/manifest.json"})
        CHECK(io::fs::exists(dir / f));
    const auto manifest = io::Json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest.at("pass").get<bool>());
    CHECK(manifest.at("config").at("scenario") == "heat");
    CHECK_FALSE(log.str().empty());
}

TEST_CASE("runs are deterministic")
{
    auto c = small_heat();
    c.scenario = h::Scenario::InequalitySweep;
    c.p = 2.0;
    c.grid = {GridKind::Line1D, 12.0, 801};
    c.samples = 3;
    c.exponents = {2.0};
    const auto a = scratch("det-a"), b = scratch("det-b");
    h::run(c, a);
    h::run(c, b);
    CHECK(slurp(a / "inequalities.csv") == slurp(b / "inequalities.csv"));
    CHECK_FALSE(slurp(a / "inequalities.csv").empty());
}

TEST_CASE("rate comparison scenario")
{
    h::ExperimentConfig c;
    c.scenario = h::Scenario::RateComparison;
    c.samples = 5;
    const auto dir = scratch("rates");
    const auto s = h::run(c, dir);
    CHECK(s.pass());
    CHECK(s.gap.has_value());
    CHECK(slurp(dir / "rates.csv").rfind("sample,H0,E0,n,", 0) == 0);
}

TEST_CASE("custom datum from a CSV file")
{
    const auto dir = scratch("custom");
    auto c = small_heat();
    const auto g = make_grid(c.grid.kind, 1, c.grid.extent, c.grid.points);
    io::write_density_csv(dir / "datum.csv", two_bump(g, 1.0));
    c.initial_datum = h::Datum::Custom;
    c.datum_file = dir / "datum.csv";
    const auto s = h::run(c, dir / "out");
    CHECK(s.pass());
    CHECK_FALSE(s.l1_error.has_value());
}

TEST_CASE("sweeps")
{
    const auto dir = scratch("sweep");
    const auto r = h::sweep(small_heat(), "points", {101, 201}, dir, nullptr, 1);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.exit_code == h::exit_code::ok);
    CHECK(r.rows[1].ratio.has_value());
    CHECK(io::fs::exists(dir / "points=101" / "manifest.json"));
    CHECK(slurp(dir / "sweep.csv").rfind(h::SweepReport::csv_header(), 0) == 0);

    CHECK(code_of([&] { h::sweep(small_heat(), "points", {}, dir); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { h::sweep(small_heat(), "colour", {1.0}, dir); }) == ErrorCode::ConfigError);

    // An inadmissible value fails that row only.
    auto fd = small_heat();
    fd.scenario = h::Scenario::FastDiffusion;
    fd.p = 0.75;
    fd.grid = {GridKind::Line1D, 20.0, 201};
    const auto bad = h::sweep(fd, "p", {0.2}, scratch("sweep-bad"), nullptr, 1);
    CHECK_FALSE(bad.rows[0].ok);
    CHECK(bad.rows[0].exit_code == h::exit_code::inadmissible);
    CHECK(bad.exit_code == h::exit_code::inadmissible);
}
