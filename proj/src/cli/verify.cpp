#include "breathing/cli/commands.hpp"

#include "breathing/constants.hpp"
#include "breathing/fields.hpp"
#include "breathing/observables.hpp"
#include "breathing/quadrature.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace breathing::cli {

namespace {

// Tolerances of the individual checks.
constexpr double kPowerTol = 1e-8;
constexpr double kOamTol = 1e-8;
constexpr double kZeroMeanTol = 1e-9; // zero-mean parts, relative to their amplitude
constexpr double kRatioTol = 1e-14;
constexpr double kSlopeTol = 1e-3;
constexpr double kContinuityTol = 1e-6;
// Radii of the slope fits, in units of sigma_st, at fixed retarded time.
constexpr double kSlopeRadiusMin = 1e6;
constexpr double kSlopeRadiusMax = 1e9;
constexpr int kSlopeRadii = 10;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    int integer(int lo, int hi) { return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
    std::mt19937_64 gen_;
};

struct Case {
    Config cfg;
    double sigma0_cm = 0.0;
    double tau = 0.0; ///< retarded time used for slopes and continuity
};

Case draw_case(Rng& rng)
{
    Case c;
    c.cfg.preset = "custom";
    c.cfg.field_tesla = (rng.integer(0, 1) ? 1.0 : -1.0) * std::pow(10.0, rng.uniform(-1.0, 1.0));
    c.cfg.n = rng.integer(0, 3);
    c.cfg.l = rng.integer(-12, 12);
    c.cfg.sigma0_prime_over_c = rng.uniform(-1e-4, 1e-4);
    c.cfg.sigma_z_nm = std::pow(10.0, rng.uniform(1.0, 3.0));
    c.cfg.kinetic_energy_kev = std::pow(10.0, rng.uniform(1.0, 2.5));
    const double sigma_L = landau_width(c.cfg.field_gauss());
    c.sigma0_cm = sigma_L * std::pow(10.0, rng.uniform(-1.0, 2.0));
    c.cfg.sigma0_nm = cm_to_nm(c.sigma0_cm);
    c.tau = rng.uniform(0.0, 1.0);
    return c;
}

double rel(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double ratio_or_zero(double num, double den) { return den == 0.0 ? std::abs(num) : std::abs(num) / den; }

struct Table {
    std::ostream& out;
    int checks = 0;
    int failures = 0;

    void row(int id, std::string_view check, double value, double tol)
    {
        const bool pass = value <= tol;
        ++checks;
        failures += pass ? 0 : 1;
        out << id << ',' << check << ',' << format_value(value) << ',' << format_value(tol) << ','
            << (pass ? "pass" : "FAIL") << '\n';
    }
};

} // namespace

int run_verify(std::ostream& out, const VerifySpec& spec, int threads)
{
    if (spec.cases < 1)
        throw ConfigError("verify needs cases >= 1");
    if (spec.continuity_grid < 2)
        throw ConfigError("verify needs grid >= 2");

    Rng rng(spec.seed);
    std::vector<Case> cases;
    for (int i = 0; i < spec.cases; ++i)
        cases.push_back(draw_case(rng));

    out << "# command = verify\n# seed = " << spec.seed << "\n# cases = " << spec.cases
        << "\n# grid = " << spec.continuity_grid << '\n';
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Config& cfg = cases[i].cfg;
        out << "# case " << i << ": field_tesla = " << format_number(cfg.field_tesla) << ", n = " << cfg.n
            << ", l = " << cfg.l << ", sigma0_nm = " << format_number(*cfg.sigma0_nm)
            << ", sigma0_prime_over_c = " << format_number(cfg.sigma0_prime_over_c)
            << ", sigma_z_nm = " << format_number(cfg.sigma_z_nm)
            << ", kinetic_energy_kev = " << format_number(cfg.kinetic_energy_kev) << '\n';
    }
    out << "case,check,value,tolerance,status\n";

    Table table{out};
    int match_total = 0;
    int match_angular = 0;
    FluxOracleOptions oracle;
    oracle.threads = threads;
    ContinuityOptions continuity;
    continuity.grid = spec.continuity_grid;
    continuity.threads = threads;

    for (std::size_t i = 0; i < cases.size(); ++i) {
        const int id = static_cast<int>(i);
        const Case& c = cases[i];
        const NslgState st = c.cfg.state(c.sigma0_cm);
        const double tau = c.tau * st.bp.period();

        const double closed_power = avg_power(st.q, st.bp);
        const double closed_oam = avg_oam_rate(st.q, st.bp);

        FluxOracleResult flux;
        try {
            flux = run_flux_oracle(st, oracle);
        } catch (const OracleError& err) {
            out << "# case " << id << ": " << err.what() << '\n';
            table.row(id, "oracle_converged", err.achieved(), 0.0);
            continue;
        }
        table.row(id, "oracle_convergence", flux.convergence_delta, oracle.convergence_tol);
        table.row(id, "interference_power_fraction", flux.interference_ratio, oracle.interference_tol);

        const NormalizationVerdict verdict = adjudicate_power_normalization(flux.mean.power_far, closed_power, kPowerTol);
        match_total += verdict.match == PowerNormalization::total_formula ? 1 : 0;
        match_angular += verdict.match == PowerNormalization::angular_formula ? 1 : 0;
        table.row(id, "power_vs_closed_form", std::min(verdict.rel_err_total, verdict.rel_err_angular), kPowerTol);

        const Cart3 oam_total = flux.mean.oam_int();
        table.row(id, "oam_vs_closed_form", rel(flux.mean.oam_int_quadratic.z, closed_oam), kOamTol);
        table.row(id, "oam_far_average", ratio_or_zero(flux.mean.oam_far.z, flux.far_oam_z_amplitude), kZeroMeanTol);
        table.row(id, "oam_linear_average", ratio_or_zero(flux.mean.oam_int_linear.z, flux.linear_oam_z_amplitude),
                  kZeroMeanTol);
        table.row(id, "oam_transverse",
                  ratio_or_zero(std::hypot(oam_total.x, oam_total.y), flux.linear_oam_z_amplitude), kZeroMeanTol);

        table.row(id, "ratio_identity", rel(closed_power / closed_oam, 3.0 * st.bp.omega_c), kRatioTol);

        const RhoSqDerivatives d = rho_sq_derivatives(tau, st.q, st.bp);
        const std::vector<double> radii = log_spaced(kSlopeRadiusMin * st.bp.sigma_st, kSlopeRadiusMax * st.bp.sigma_st, kSlopeRadii);
        const double theta = cgs::pi / 3.0;
        const double slope_far = scaling_slope(
            [&](double R) { return poynting_from_derivatives({R, theta, 0.0}, d, st).far.norm(); }, radii);
        const double slope_int = scaling_slope(
            [&](double R) { return poynting_from_derivatives({R, theta, 0.0}, d, st).interference.norm(); }, radii);
        const double slope_oam =
            scaling_slope([&](double R) { return dLz_dt_far(R, tau + R / cgs::c_light, st); }, radii);
        table.row(id, "slope_far_plus_2", std::abs(slope_far + 2.0), kSlopeTol);
        table.row(id, "slope_interference_plus_3", std::abs(slope_int + 3.0), kSlopeTol);
        table.row(id, "slope_oam_far_minus_1", std::abs(slope_oam - 1.0), kSlopeTol);

        table.row(id, "continuity_residual", continuity_residual(st, tau, continuity).relative(), kContinuityTol);
    }

    out << "# normalization: the direct sphere integral matches the total-power formula in " << match_total << "/"
        << spec.cases << " cases and the integral of the printed angular formula in " << match_angular << "/"
        << spec.cases << " cases\n";
    out << "# summary: " << table.checks << " checks, " << table.failures << " failed\n";
    return table.failures == 0 ? kExitOk : kExitVerificationFailed;
}

} // namespace breathing::cli
