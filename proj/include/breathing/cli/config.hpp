#pragma once

// Run configuration shared by every subcommand: flat `key = value` files,
// flag overrides, presets and the resolved echo written into each output.

#include "breathing/observables.hpp"
#include "breathing/sources.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace breathing::cli {

enum ExitCode : int { kExitOk = 0, kExitVerificationFailed = 1, kExitConfigError = 2, kExitDegeneratePhysics = 3 };

/// Unknown key, malformed value or out-of-range parameter.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Physically degenerate input, e.g. zero field.
class DegeneratePhysics : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::array<std::string_view, 9> kConfigKeys = {
    "field_tesla", "n", "l", "sigma0_nm", "sigma0_prime_over_c", "sigma_z_nm", "kinetic_energy_kev",
    "solenoid_length_cm", "preset"};

using KeyValues = std::map<std::string, std::string, std::less<>>;

/// Parses `key = value` lines; `#` starts a comment. Throws ConfigError
/// naming the offending key or line.
KeyValues parse_config_text(std::string_view text);
KeyValues read_config_file(const std::string& path);

/// Per-subcommand defaults for the keys a preset does not cover.
struct CommandDefaults {
    std::string sigma0_nm = "1000";
    double sigma0_prime_over_c = 0.0;
};

struct Config {
    std::string preset = "tem";
    double field_tesla = 1.0;
    int n = 0;
    int l = 10;
    std::optional<double> sigma0_nm; ///< empty means the Landau width of the field
    double sigma0_prime_over_c = 0.0;
    double sigma_z_nm = 100.0;
    double kinetic_energy_kev = 200.0; ///< infinity means v = c
    double solenoid_length_cm = 20.0;

    Scenario scenario() const;
    double field_gauss() const;
    /// Initial width in cm; the Landau width when sigma0_nm is empty.
    double sigma0_cm() const;
    /// Packet quantum numbers, breathing parameters and longitudinal packet
    /// for a given initial width. Throws DegeneratePhysics for zero field.
    NslgState state(double sigma0_cm) const;
};

/// Layers defaults, preset, file values and flag values (later wins) and
/// validates the result.
Config resolve_config(const KeyValues& file, const KeyValues& flags, const CommandDefaults& defaults);

/// Every key with its resolved value, in kConfigKeys order.
KeyValues materialize(const Config& cfg);

/// Shortest round-trip decimal form of a double; "inf" for infinity.
std::string format_number(double x);

} // namespace breathing::cli
