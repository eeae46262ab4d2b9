#include "breathing/observables.hpp"

#include <cmath>
#include <limits>

namespace breathing {

namespace {

double radiation_scale(const PacketQuantumNumbers& q, const BreathingParams& bp)
{
    const double g = q.degeneracy();
    const double s = bp.s_sign;
    const double c5 = std::pow(cgs::c_light, 5);
    return g * g * s * s * cgs::e_charge * cgs::e_charge / c5 * bp.excess;
}

} // namespace

Scenario Scenario::tem() { return custom(1.0, 20.0, 200.0); }

Scenario Scenario::linac_1km() { return custom(1.0, 1.0e5, std::numeric_limits<double>::infinity()); }

Scenario Scenario::custom(double field_tesla, double length_cm, double kinetic_kev)
{
    Scenario s;
    s.field = FieldSpec::from_tesla(field_tesla);
    s.length_cm = length_cm;
    s.kinetic_ev = kinetic_kev * 1.0e3;
    s.velocity = energy_to_velocity(s.kinetic_ev);
    return s;
}

double avg_power(const PacketQuantumNumbers& q, const BreathingParams& bp)
{
    return std::pow(bp.omega_c, 6) / 40.0 * radiation_scale(q, bp);
}

double avg_oam_rate(const PacketQuantumNumbers& q, const BreathingParams& bp)
{
    return std::pow(bp.omega_c, 5) / 120.0 * radiation_scale(q, bp);
}

double angular_shape(double theta)
{
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return (1.0 + c * c) * s * s;
}

double angular_power_distribution_raw(double theta, const PacketQuantumNumbers& q, const BreathingParams& bp)
{
    return avg_power(q, bp) * angular_shape(theta);
}

double angular_power_distribution(double theta, const PacketQuantumNumbers& q, const BreathingParams& bp)
{
    return avg_power(q, bp) * 5.0 / (16.0 * cgs::pi) * angular_shape(theta);
}

double transverse_energy(const PacketQuantumNumbers& q, const BreathingParams& bp)
{
    const double ratio = (bp.sigma_st / bp.sigma_L) * (bp.sigma_st / bp.sigma_L);
    return 0.5 * cgs::hbar * std::abs(bp.omega_c) * q.degeneracy() * ratio + q.l * cgs::mu_B * bp.field_gauss;
}

RadiationReport flight_report(const Scenario& scenario, const PacketQuantumNumbers& q, const BreathingParams& bp)
{
    RadiationReport r;
    const double t_flight = scenario.flight_time();
    const double quantum = cgs::hbar * std::abs(bp.omega_c);

    r.avg_power_erg_s = avg_power(q, bp);
    r.avg_power_ev_s = erg_to_ev(r.avg_power_erg_s);
    r.avg_dLz_dt = avg_oam_rate(q, bp);
    r.avg_dLz_dt_hbar_s = r.avg_dLz_dt / cgs::hbar;
    r.E_rad_per_period_ev = erg_to_ev(r.avg_power_erg_s * bp.period());
    r.E_perp_ev = erg_to_ev(transverse_energy(q, bp));
    r.ratio = r.E_rad_per_period_ev / r.E_perp_ev;
    r.total_energy_ev = r.avg_power_ev_s * t_flight;
    r.total_dLz_hbar = r.avg_dLz_dt_hbar_s * t_flight;
    r.photon_count = r.avg_power_erg_s * t_flight / quantum;
    r.oam_quantum_loss_time_s =
        r.avg_dLz_dt == 0.0 ? std::numeric_limits<double>::infinity() : cgs::hbar / std::abs(r.avg_dLz_dt);
    return r;
}

} // namespace breathing
