#include "breathing/cli/commands.hpp"

#include "breathing/constants.hpp"
#include "breathing/fringe.hpp"
#include "breathing/observables.hpp"
#include "breathing/quadrature.hpp"

#include <cmath>
#include <cstdio>

namespace breathing::cli {

namespace {

void echo_config(std::ostream& out, std::string_view command, const Config& cfg)
{
    out << "# command = " << command << '\n';
    const KeyValues resolved = materialize(cfg);
    for (std::string_view key : kConfigKeys)
        out << "# " << key << " = " << resolved.find(key)->second << '\n';
}

void write_row(std::ostream& out, const CsvRow& row)
{
    const RadiationReport& r = row.report;
    out << format_value(row.sigma0_nm) << ',' << format_value(row.sigma_st_nm) << ',' << row.s_sign << ','
        << format_value(r.avg_power_ev_s) << ',' << format_value(r.avg_dLz_dt_hbar_s) << ','
        << format_value(r.E_rad_per_period_ev) << ',' << format_value(r.E_perp_ev) << ',' << format_value(r.ratio)
        << ',' << format_value(r.total_energy_ev) << ',' << format_value(r.total_dLz_hbar) << ','
        << format_value(r.photon_count) << ',' << format_value(r.oam_quantum_loss_time_s) << '\n';
}

} // namespace

std::string_view command_name(SweepKind kind)
{
    switch (kind) {
    case SweepKind::power: return "power-sweep";
    case SweepKind::oam: return "oam-sweep";
    case SweepKind::ratio: return "ratio-sweep";
    }
    return "sweep";
}

CommandDefaults sweep_defaults(SweepKind kind)
{
    CommandDefaults d;
    d.sigma0_prime_over_c = kind == SweepKind::power ? -3.1e-4 : 0.0;
    return d;
}

std::vector<double> sweep_grid_nm(const SweepSpec& spec)
{
    if (!(spec.sigma0_min_nm > 0.0) || !(spec.sigma0_max_nm >= spec.sigma0_min_nm) || std::isinf(spec.sigma0_max_nm))
        throw ConfigError("sweep range needs 0 < sigma0_min_nm <= sigma0_max_nm");
    if (spec.points < 2)
        throw ConfigError("sweep needs points >= 2");
    if (spec.scale == "log")
        return log_spaced(spec.sigma0_min_nm, spec.sigma0_max_nm, spec.points);
    if (spec.scale != "linear")
        throw ConfigError("invalid value for scale: '" + spec.scale + "' (log, linear)");
    std::vector<double> grid(static_cast<std::size_t>(spec.points));
    const double step = (spec.sigma0_max_nm - spec.sigma0_min_nm) / (spec.points - 1);
    for (int i = 0; i < spec.points; ++i)
        grid[static_cast<std::size_t>(i)] = spec.sigma0_min_nm + i * step;
    grid.back() = spec.sigma0_max_nm;
    return grid;
}

std::string format_value(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", x + 0.0);
    return buf;
}

CsvRow compute_row(const Config& cfg, double sigma0_cm)
{
    const NslgState st = cfg.state(sigma0_cm);
    CsvRow row;
    row.sigma0_nm = cm_to_nm(sigma0_cm);
    row.sigma_st_nm = cm_to_nm(st.bp.sigma_st);
    row.s_sign = st.bp.s_sign;
    row.report = flight_report(cfg.scenario(), st.q, st.bp);
    return row;
}

void write_sweep(std::ostream& out, SweepKind kind, const Config& cfg, const SweepSpec& spec, int threads)
{
    std::vector<double> sigma0_cm;
    if (spec.at_config_sigma0) {
        sigma0_cm.push_back(cfg.sigma0_cm());
    } else {
        for (double nm : sweep_grid_nm(spec))
            sigma0_cm.push_back(nm_to_cm(nm));
    }
    // Surface degenerate input before any output is written.
    cfg.state(sigma0_cm.front());

    std::vector<CsvRow> rows(sigma0_cm.size());
    parallel_for(rows.size(), threads, [&](std::size_t i) { rows[i] = compute_row(cfg, sigma0_cm[i]); });

    echo_config(out, command_name(kind), cfg);
    if (spec.at_config_sigma0) {
        out << "# sweep = single point at sigma0_nm\n";
    } else {
        out << "# sigma0_min_nm = " << format_number(spec.sigma0_min_nm) << '\n'
            << "# sigma0_max_nm = " << format_number(spec.sigma0_max_nm) << '\n'
            << "# points = " << spec.points << '\n'
            << "# scale = " << spec.scale << '\n';
    }
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i)
        out << (i ? "," : "") << kCsvColumns[i];
    out << '\n';
    for (const CsvRow& row : rows)
        write_row(out, row);
}

void write_angular(std::ostream& out, const Config& cfg, int resolution)
{
    if (resolution < 2)
        throw ConfigError("angular resolution must be >= 2");
    const NslgState st = cfg.state(cfg.sigma0_cm());

    echo_config(out, "angular", cfg);
    out << "# resolution = " << resolution << '\n';
    out << "# dP_dOmega_printed is <P> (1 + cos^2) sin^2; its solid-angle integral is 16 pi / 5 times <P>\n";
    out << "theta_rad,dP_dOmega_printed_ev_per_s,dP_dOmega_ev_per_s_sr\n";
    const int last = resolution - 1;
    for (int i = 0; i <= last; ++i) {
        const double theta = cgs::pi * i / last;
        // Mirror so the output is exactly symmetric about pi/2.
        const double folded = cgs::pi * std::min(i, last - i) / last;
        out << format_value(theta) << ','
            << format_value(erg_to_ev(angular_power_distribution_raw(folded, st.q, st.bp))) << ','
            << format_value(erg_to_ev(angular_power_distribution(folded, st.q, st.bp))) << '\n';
    }
}

bool write_fringe(std::ostream& out, std::ostream& warn, const Config& cfg, const FringeSpec& spec)
{
    if (!(spec.diameter_cm > 0.0))
        throw ConfigError("diameter_cm must be > 0");
    if (!(spec.observation_radius_cm > 0.0))
        throw ConfigError("observation_radius_cm must be > 0");
    const NslgState st = cfg.state(cfg.sigma0_cm());
    const FringeScenario fs = FringeScenario::from_solenoid(spec.diameter_cm, cfg.field_gauss());
    const AdiabaticityCheck adiabatic = adiabatic_check(fs);
    const TransitObservables obs = transit_observables(fs, st.q, st.bp, st.pkt, spec.observation_radius_cm);

    echo_config(out, "fringe", cfg);
    out << "# diameter_cm = " << format_number(spec.diameter_cm) << '\n'
        << "# observation_radius_cm = " << format_number(spec.observation_radius_cm) << '\n';
    out << "quantity,value,unit\n";
    auto row = [&](std::string_view name, double value, std::string_view unit) {
        out << name << ',' << format_value(value) << ',' << unit << '\n';
    };
    row("transit_time", fs.transit_time, "s");
    row("omega_c_T", obs.omega_T, "1");
    row("adiabaticity_ratio", adiabatic.ratio, "1");
    row("adiabatic", adiabatic.adiabatic ? 1.0 : 0.0, "bool");
    row("fresnel_argument", obs.fresnel_argument, "1");
    row("fresnel_C", obs.fresnel_value, "1");
    row("transit_bracket", obs.bracket, "1");
    row("power", erg_to_ev(obs.power), "eV/s");
    row("dLz_dt_interference", obs.dLz_int / cgs::hbar, "hbar/s");
    row("dLz_dt_p0_interference", obs.dLz_p0 / cgs::hbar, "hbar/s");
    row("dLz_dt_rad_R_dependent_transition_term", obs.dLz_rad / cgs::hbar, "hbar/s");
    row("observation_radius", obs.observation_radius, "cm");

    if (!adiabatic.adiabatic)
        warn << "warning: fringe ramp is not adiabatic (|dw/dt|/w^2 = " << format_value(adiabatic.ratio)
             << " >= 0.1); transit formulas are outside their range of validity\n";
    return adiabatic.adiabatic;
}

} // namespace breathing::cli
