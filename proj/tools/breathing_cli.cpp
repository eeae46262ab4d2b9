#include "breathing/cli/commands.hpp"
#include "breathing/cli/config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <thread>

namespace {

using namespace breathing::cli;

struct Common {
    std::string config_path;
    std::string out_path;
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::map<std::string, std::string> key_flags;
};

void add_common(CLI::App* sub, Common& common)
{
    sub->add_option("--config", common.config_path, "key = value config file");
    sub->add_option("--out", common.out_path, "output path (default stdout)");
    sub->add_option("--threads", common.threads, "worker threads; output does not depend on it")->check(CLI::PositiveNumber);
    for (std::string_view key : kConfigKeys) {
        const std::string name(key);
        sub->add_option("--" + name, common.key_flags[name], "overrides config key " + name);
    }
}

Config resolve(const CLI::App* sub, const Common& common, const CommandDefaults& defaults)
{
    const KeyValues file = common.config_path.empty() ? KeyValues{} : read_config_file(common.config_path);
    KeyValues flags;
    for (const auto& [key, value] : common.key_flags)
        if (sub->count("--" + key) > 0)
            flags[key] = value;
    return resolve_config(file, flags, defaults);
}

template <class Body>
int with_output(const Common& common, Body body)
{
    if (common.out_path.empty())
        return body(std::cout);
    std::ofstream file(common.out_path, std::ios::binary);
    if (!file)
        throw ConfigError("cannot open output file: " + common.out_path);
    return body(file);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Radiation of breathing Laguerre-Gaussian electron packets in a solenoid"};
    app.require_subcommand(1);

    Common common;
    SweepSpec sweep;
    int resolution = 181;
    FringeSpec fringe;
    VerifySpec verify;

    std::map<CLI::App*, SweepKind> sweeps;
    for (SweepKind kind : {SweepKind::power, SweepKind::oam, SweepKind::ratio}) {
        CLI::App* sub = app.add_subcommand(std::string(command_name(kind)), "sigma0 sweep, one CSV row per point");
        add_common(sub, common);
        sub->add_option("--sigma0_min_nm", sweep.sigma0_min_nm, "smallest initial width");
        sub->add_option("--sigma0_max_nm", sweep.sigma0_max_nm, "largest initial width");
        sub->add_option("--points", sweep.points, "number of widths (>= 2)");
        sub->add_option("--scale", sweep.scale, "log or linear");
        sub->add_flag("--at-sigma0", sweep.at_config_sigma0, "single row at the configured sigma0_nm");
        sweeps[sub] = kind;
    }
    CLI::App* angular = app.add_subcommand("angular", "angular distribution of the period-averaged power");
    add_common(angular, common);
    angular->add_option("--resolution", resolution, "theta points over [0, pi] (>= 2)");

    CLI::App* fringe_cmd = app.add_subcommand("fringe", "transit-averaged observables across the fringe field");
    add_common(fringe_cmd, common);
    fringe_cmd->add_option("--diameter_cm", fringe.diameter_cm, "solenoid diameter D");
    fringe_cmd->add_option("--observation_radius_cm", fringe.observation_radius_cm, "R for the radiative OAM term");

    CLI::App* verify_cmd = app.add_subcommand("verify", "randomized closed-form vs quadrature checks");
    add_common(verify_cmd, common);
    verify_cmd->add_option("--seed", verify.seed, "RNG seed");
    verify_cmd->add_option("--cases", verify.cases, "number of random parameter sets (>= 1)");
    verify_cmd->add_option("--grid", verify.continuity_grid, "continuity grid points per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        for (const auto& [sub, kind] : sweeps) {
            if (!sub->parsed())
                continue;
            const Config cfg = resolve(sub, common, sweep_defaults(kind));
            return with_output(common, [&](std::ostream& out) {
                write_sweep(out, kind, cfg, sweep, common.threads);
                return static_cast<int>(kExitOk);
            });
        }
        if (angular->parsed()) {
            CommandDefaults defaults;
            defaults.sigma0_prime_over_c = -3.1e-4;
            const Config cfg = resolve(angular, common, defaults);
            return with_output(common, [&](std::ostream& out) {
                write_angular(out, cfg, resolution);
                return static_cast<int>(kExitOk);
            });
        }
        if (fringe_cmd->parsed()) {
            CommandDefaults defaults;
            defaults.sigma0_prime_over_c = -3.1e-4;
            const Config cfg = resolve(fringe_cmd, common, defaults);
            return with_output(common, [&](std::ostream& out) {
                write_fringe(out, std::cerr, cfg, fringe);
                return static_cast<int>(kExitOk);
            });
        }
        if (verify_cmd->parsed()) {
            if (!common.config_path.empty() || std::any_of(kConfigKeys.begin(), kConfigKeys.end(), [&](auto key) {
                    return verify_cmd->count("--" + std::string(key)) > 0;
                }))
                throw ConfigError("verify draws its own parameter sets; config keys are not accepted");
            return with_output(common, [&](std::ostream& out) { return run_verify(out, verify, common.threads); });
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const DegeneratePhysics& e) {
        std::cerr << "degenerate physics: " << e.what() << '\n';
        return kExitDegeneratePhysics;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
    return kExitOk;
}
