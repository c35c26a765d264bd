#include "renyi/harness.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace h = renyi::harness;

namespace {

struct Options {
    std::string config;
    std::string output;
    std::string preset;
    bool quiet = false;
};

h::ExperimentConfig resolve(const Options& opt)
{
    if (!opt.config.empty() && !opt.preset.empty())
        throw renyi::Error(renyi::ErrorCode::ConfigError, "give either --config or --preset, not both");
    if (opt.config.empty() && opt.preset.empty())
        throw renyi::Error(renyi::ErrorCode::ConfigError, "a config file (--config) or preset (--preset) is required");
    auto cfg = opt.config.empty() ? h::preset(opt.preset) : h::load_config(opt.config);
    if (!opt.output.empty())
        cfg.output_dir = opt.output;
    return cfg;
}

int do_run(const Options& opt)
{
    const auto cfg = resolve(opt);
    const auto summary = h::run(cfg, cfg.output_dir, opt.quiet ? nullptr : &std::cout);
    return summary.pass() ? h::exit_code::ok : h::exit_code::violation;
}

int do_sweep(const Options& opt, const std::string& param, const std::vector<double>& values)
{
    const auto cfg = resolve(opt);
    if (!opt.quiet)
        std::cout << "sweeping " << param << " over " << values.size() << " values\n";
    const auto report = h::sweep(cfg, param, values, cfg.output_dir, opt.quiet ? nullptr : &std::cout);
    if (!opt.quiet)
        std::cout << "summary in " << (cfg.output_dir / "sweep.csv").string() << '\n';
    return report.exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"renyi-flow: entropy decay experiments for nonlinear diffusion"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opt.config, "JSON experiment config");
        cmd->add_option("--output", opt.output, "Output directory (overrides output_dir)");
        cmd->add_option("--preset", opt.preset, "Named preset instead of a config file");
        cmd->add_flag("--quiet", opt.quiet, "Suppress progress output");
    };

    auto* run = app.add_subcommand("run", "Run one experiment");
    add_common(run);

    std::string param;
    std::vector<double> values;
    bool values_given = false;
    auto* sweep = app.add_subcommand("sweep", "Run the base experiment once per parameter value");
    add_common(sweep);
    sweep->add_option("--param", param, "p, points, t_end or E0")->required();
    sweep->add_option("--values", values, "Comma-separated values")->delimiter(',')->expected(0, -1);

    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "Run a named preset");
    preset->add_option("name", preset_name, "Preset name")->required();
    preset->add_option("--output", opt.output, "Output directory");
    preset->add_flag("--quiet", opt.quiet, "Suppress progress output");

    auto* list = app.add_subcommand("presets", "List preset names");

    try {
        app.parse(argc, argv);
        values_given = sweep->count("--values") > 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return h::exit_code::config;
    }

    try {
        if (*run)
            return do_run(opt);
        if (*sweep) {
            if (!values_given)
                values.clear();
            return do_sweep(opt, param, values);
        }
        if (*preset) {
            opt.preset = preset_name;
            return do_run(opt);
        }
        if (*list) {
            for (const auto& name : h::preset_names())
                std::cout << name << '\n';
            return h::exit_code::ok;
        }
    } catch (const renyi::Error& e) {
        std::cerr << "error (" << renyi::to_string(e.code()) << "): " << e.what() << '\n';
        return h::exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return h::exit_code::config;
    }
    return h::exit_code::config;
}
