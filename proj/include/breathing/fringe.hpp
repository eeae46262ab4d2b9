#pragma once

// Radiation while crossing the solenoid fringe field, modelled as an
// adiabatic linear ramp of the cyclotron frequency over the transit time.

#include "breathing/dynamics.hpp"
#include "breathing/sources.hpp"

namespace breathing {

/// Fresnel cosine integral C(x) = int_0^x cos(pi t^2 / 2) dt, x >= 0.
double fresnel_C(double x);
/// Fresnel sine integral S(x) = int_0^x sin(pi t^2 / 2) dt, x >= 0.
double fresnel_S(double x);

struct FringeScenario {
    double diameter_cm = 0.0;
    double transit_time = 0.0;  ///< s, fringe region of length 2D crossed at ~c
    double omega_c = 0.0;       ///< inner (full-field) cyclotron frequency, signed
    double omega_c_rate = 0.0;  ///< d w_c / dt across the ramp, rad/s^2

    /// T = 2D / c, w_c' = w_c / T.
    static FringeScenario from_solenoid(double diameter_cm, double field_gauss);
};

struct AdiabaticityCheck {
    double ratio = 0.0; ///< |d w_c/dt| / w_c^2
    bool adiabatic = false;
};

/// Adiabatic iff ratio < threshold (strict).
AdiabaticityCheck adiabatic_check(const FringeScenario& fs, double threshold = 0.1);

/// Shared bracket of the transit-averaged power and interference OAM rate, x = |w_c| T:
/// (4/5) x^2 + 1 + (9/16) sqrt(pi/x) C(2 sqrt(x/pi)) + ((s - 3)/8) cos 2x - (x/2) sin 2x.
/// Throws std::domain_error for x below 1e-3.
double transit_bracket(double x, int s_sign);

/// Smallest |w_c| T for which the transit formulas are evaluated.
inline constexpr double kMinOmegaT = 1.0e-3;

struct TransitObservables {
    double power = 0.0;          ///< <P>_T, erg/s
    double dLz_int = 0.0;        ///< <dL/dt>_{int,T}, erg
    double dLz_p0 = 0.0;         ///< <dL_{p0}/dt>_{int,T}, erg
    double dLz_rad = 0.0;        ///< <dL/dt>_{rad,T}, erg; grows linearly with R
    double observation_radius = 0.0;
    double omega_T = 0.0;        ///< |w_c| T
    double bracket = 0.0;
    double fresnel_argument = 0.0;
    double fresnel_value = 0.0;
};

/// Transit-averaged power and angular-momentum rates. `bp` describes the
/// packet in the inner field; R is the observation radius for the radiative
/// OAM term.
TransitObservables transit_observables(const FringeScenario& fs, const PacketQuantumNumbers& q,
                                       const BreathingParams& bp, const LongitudinalPacket& pkt, double R);

} // namespace breathing
