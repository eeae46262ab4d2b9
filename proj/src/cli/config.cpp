#include "breathing/cli/config.hpp"

#include "breathing/constants.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace breathing::cli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_known_key(std::string_view key)
{
    return std::find(kConfigKeys.begin(), kConfigKeys.end(), key) != kConfigKeys.end();
}

double parse_double(std::string_view key, std::string_view value)
{
    if (value == "inf")
        return std::numeric_limits<double>::infinity();
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out))
        throw ConfigError("invalid value for " + std::string(key) + ": '" + std::string(value) + "'");
    return out;
}

int parse_int(std::string_view key, std::string_view value)
{
    int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("invalid integer for " + std::string(key) + ": '" + std::string(value) + "'");
    return out;
}

struct Preset {
    double field_tesla;
    double kinetic_energy_kev;
    double solenoid_length_cm;
};

Preset preset_values(std::string_view name)
{
    if (name == "tem" || name == "custom")
        return {1.0, 200.0, 20.0};
    if (name == "linac-1km")
        return {1.0, std::numeric_limits<double>::infinity(), 1.0e5};
    throw ConfigError("invalid value for preset: '" + std::string(name) + "' (tem, linac-1km, custom)");
}

void apply(Config& cfg, std::string_view key, std::string_view value)
{
    if (key == "field_tesla")
        cfg.field_tesla = parse_double(key, value);
    else if (key == "n")
        cfg.n = parse_int(key, value);
    else if (key == "l")
        cfg.l = parse_int(key, value);
    else if (key == "sigma0_nm")
        cfg.sigma0_nm = value == "landau" ? std::nullopt : std::optional<double>(parse_double(key, value));
    else if (key == "sigma0_prime_over_c")
        cfg.sigma0_prime_over_c = parse_double(key, value);
    else if (key == "sigma_z_nm")
        cfg.sigma_z_nm = parse_double(key, value);
    else if (key == "kinetic_energy_kev")
        cfg.kinetic_energy_kev = parse_double(key, value);
    else if (key == "solenoid_length_cm")
        cfg.solenoid_length_cm = parse_double(key, value);
    else if (key == "preset")
        cfg.preset = std::string(value);
    else
        throw ConfigError("unknown config key: " + std::string(key));
}

void validate(const Config& cfg)
{
    if (cfg.n < 0)
        throw ConfigError("n must be >= 0");
    if (cfg.sigma0_nm && !(*cfg.sigma0_nm > 0.0))
        throw ConfigError("sigma0_nm must be > 0 or 'landau'");
    if (!(cfg.sigma_z_nm > 0.0))
        throw ConfigError("sigma_z_nm must be > 0");
    if (!(cfg.kinetic_energy_kev > 0.0))
        throw ConfigError("kinetic_energy_kev must be > 0");
    if (!(cfg.solenoid_length_cm > 0.0) || std::isinf(cfg.solenoid_length_cm))
        throw ConfigError("solenoid_length_cm must be finite and > 0");
    if (std::isinf(cfg.field_tesla))
        throw ConfigError("field_tesla must be finite");
    if (std::isinf(cfg.sigma0_prime_over_c))
        throw ConfigError("sigma0_prime_over_c must be finite");
}

} // namespace

KeyValues parse_config_text(std::string_view text)
{
    KeyValues out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + " is not 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!is_known_key(key))
            throw ConfigError("unknown config key: " + std::string(key));
        if (value.empty())
            throw ConfigError("missing value for " + std::string(key));
        out.insert_or_assign(std::string(key), std::string(value));
    }
    return out;
}

KeyValues read_config_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

Config resolve_config(const KeyValues& file, const KeyValues& flags, const CommandDefaults& defaults)
{
    KeyValues merged = file;
    for (const auto& [k, v] : flags)
        merged.insert_or_assign(k, v);

    Config cfg;
    apply(cfg, "sigma0_nm", defaults.sigma0_nm);
    cfg.sigma0_prime_over_c = defaults.sigma0_prime_over_c;

    if (auto it = merged.find("preset"); it != merged.end())
        cfg.preset = it->second;
    const Preset p = preset_values(cfg.preset);
    cfg.field_tesla = p.field_tesla;
    cfg.kinetic_energy_kev = p.kinetic_energy_kev;
    cfg.solenoid_length_cm = p.solenoid_length_cm;

    for (const auto& [k, v] : merged)
        apply(cfg, k, v);
    validate(cfg);
    return cfg;
}

KeyValues materialize(const Config& cfg)
{
    KeyValues out;
    out["preset"] = cfg.preset;
    out["field_tesla"] = format_number(cfg.field_tesla);
    out["n"] = std::to_string(cfg.n);
    out["l"] = std::to_string(cfg.l);
    out["sigma0_nm"] = cfg.sigma0_nm ? format_number(*cfg.sigma0_nm) : "landau";
    out["sigma0_prime_over_c"] = format_number(cfg.sigma0_prime_over_c);
    out["sigma_z_nm"] = format_number(cfg.sigma_z_nm);
    out["kinetic_energy_kev"] = format_number(cfg.kinetic_energy_kev);
    out["solenoid_length_cm"] = format_number(cfg.solenoid_length_cm);
    return out;
}

std::string format_number(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x + 0.0);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

double Config::field_gauss() const { return FieldSpec::from_tesla(field_tesla).gauss; }

Scenario Config::scenario() const { return Scenario::custom(field_tesla, solenoid_length_cm, kinetic_energy_kev); }

double Config::sigma0_cm() const
{
    if (field_tesla == 0.0)
        throw DegeneratePhysics("field_tesla = 0: no cyclotron motion, breathing is undefined");
    return sigma0_nm ? nm_to_cm(*sigma0_nm) : landau_width(field_gauss());
}

NslgState Config::state(double sigma0_cm) const
{
    if (field_tesla == 0.0)
        throw DegeneratePhysics("field_tesla = 0: no cyclotron motion, breathing is undefined");
    NslgState st;
    st.q = {n, l};
    st.bp = breathing_params({sigma0_cm, sigma0_prime_over_c * cgs::c_light}, field_gauss());
    st.pkt.p0 = cgs::m_electron * scenario().velocity;
    st.pkt.sigma_z = nm_to_cm(sigma_z_nm);
    return st;
}

} // namespace breathing::cli
