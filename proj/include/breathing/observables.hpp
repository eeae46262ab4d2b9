#pragma once

// Closed-form period-averaged radiation observables and flight totals.

#include "breathing/constants.hpp"
#include "breathing/dynamics.hpp"

#include <string>

namespace breathing {

/// Experimental context: uniform field inside a solenoid of length d,
/// traversed at longitudinal speed v.
struct Scenario {
    FieldSpec field;
    double length_cm = 0.0;
    double kinetic_ev = 0.0; ///< informational when the speed is set directly
    double velocity = 0.0;   ///< cm/s

    double flight_time() const { return length_cm / velocity; }

    /// 200 keV electrons through a 20 cm, 1 T solenoid.
    static Scenario tem();
    /// 1 km at v = c in a 1 T field.
    static Scenario linac_1km();
    /// An infinite kinetic energy means v = c.
    static Scenario custom(double field_tesla, double length_cm, double kinetic_kev);
};

struct RadiationReport {
    double avg_power_erg_s = 0.0;
    double avg_power_ev_s = 0.0;
    double avg_dLz_dt = 0.0;          ///< erg (angular momentum per second)
    double avg_dLz_dt_hbar_s = 0.0;
    double E_rad_per_period_ev = 0.0; ///< <P> T_c
    double E_perp_ev = 0.0;
    double ratio = 0.0;               ///< E_rad / E_perp
    double total_energy_ev = 0.0;
    double total_dLz_hbar = 0.0;
    double photon_count = 0.0;        ///< total energy / (hbar |w_c|)
    double oam_quantum_loss_time_s = 0.0; ///< hbar / |<dLz/dt>|, +inf when nothing radiates
};

/// <P> = g^2 s^2 w_c^6 e^2 / (40 c^5) (sigma_st^4 - sigma_L^4), erg/s.
double avg_power(const PacketQuantumNumbers& q, const BreathingParams& bp);

/// <dL_z/dt> = g^2 s^2 w_c^5 e^2 / (120 c^5) (sigma_st^4 - sigma_L^4), signed like w_c.
double avg_oam_rate(const PacketQuantumNumbers& q, const BreathingParams& bp);

/// (1 + cos^2 theta) sin^2 theta
double angular_shape(double theta);

/// Angular distribution with the printed prefactor, i.e. avg_power() times
/// the shape. Its solid-angle integral is 16 pi / 5 times avg_power().
double angular_power_distribution_raw(double theta, const PacketQuantumNumbers& q, const BreathingParams& bp);

/// Same shape, normalized so that the solid-angle integral equals avg_power().
/// This is the distribution the direct sphere integration of the far
/// Poynting flux produces.
double angular_power_distribution(double theta, const PacketQuantumNumbers& q, const BreathingParams& bp);

/// Transverse energy (hbar |w_c| / 2) g sigma_st^2 / sigma_L^2 + l mu_B H, erg.
double transverse_energy(const PacketQuantumNumbers& q, const BreathingParams& bp);

RadiationReport flight_report(const Scenario& scenario, const PacketQuantumNumbers& q, const BreathingParams& bp);

} // namespace breathing
