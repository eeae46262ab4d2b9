#pragma once

// Subcommand bodies. Each writes its complete output, including the echoed
// configuration, to a stream; the executable only parses flags and picks
// the stream.

#include "breathing/cli/config.hpp"

#include <array>
#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

namespace breathing::cli {

enum class SweepKind { power, oam, ratio };

std::string_view command_name(SweepKind kind);
/// sigma0' / c is -3.1e-4 for the power sweep and 0 for the other two.
CommandDefaults sweep_defaults(SweepKind kind);

struct SweepSpec {
    double sigma0_min_nm = 1.0;
    double sigma0_max_nm = 1.0e6;
    int points = 300;
    std::string scale = "log"; ///< log or linear
    /// Evaluate a single row at the configured sigma0_nm instead of the range.
    bool at_config_sigma0 = false;
};

/// Initial widths of the sweep in nm. Throws ConfigError on an invalid spec.
std::vector<double> sweep_grid_nm(const SweepSpec& spec);

inline constexpr std::array<std::string_view, 12> kCsvColumns = {
    "sigma0_nm",     "sigma_st_nm",  "s_sign",          "power_ev_per_s",  "dLz_dt_hbar_per_s", "E_rad_per_period_ev",
    "E_perp_ev",     "ratio",        "total_energy_ev", "total_dLz_hbar",  "photon_count",      "oam_quantum_loss_time_s"};

struct CsvRow {
    double sigma0_nm = 0.0;
    double sigma_st_nm = 0.0;
    int s_sign = 0;
    RadiationReport report;
};

CsvRow compute_row(const Config& cfg, double sigma0_cm);

/// Nine significant digits in scientific notation; "inf" for infinity; no negative zero.
std::string format_value(double x);

void write_sweep(std::ostream& out, SweepKind kind, const Config& cfg, const SweepSpec& spec, int threads);

/// theta over [0, pi] with `resolution` points (>= 2): the printed angular
/// formula and the shape normalized to the total power.
void write_angular(std::ostream& out, const Config& cfg, int resolution);

struct FringeSpec {
    double diameter_cm = 1.0;
    double observation_radius_cm = 100.0;
};

/// Writes the transit report; returns false (after a warning on `warn`)
/// when the ramp is not adiabatic.
bool write_fringe(std::ostream& out, std::ostream& warn, const Config& cfg, const FringeSpec& spec);

struct VerifySpec {
    std::uint64_t seed = 1;
    int cases = 20;
    int continuity_grid = 32;
};

/// Randomized closed-form vs oracle comparison. Returns kExitOk when every
/// check passes, kExitVerificationFailed otherwise.
int run_verify(std::ostream& out, const VerifySpec& spec, int threads);

} // namespace breathing::cli
