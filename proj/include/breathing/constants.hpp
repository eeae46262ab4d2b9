#pragma once

// Physical constants (CODATA 2018) in Gaussian CGS units and the handful of
// conversions between user-facing SI/eV quantities and internal CGS.
//
// The electron charge is negative, so the cyclotron frequency eH/(mc) is
// negative for a field pointing along +z.

#include <cmath>

namespace breathing {

namespace cgs {

inline constexpr double c_light = 2.99792458e10;           // cm/s
inline constexpr double e_charge = -4.803204712570263e-10; // statC, -1.602176634e-19 C
inline constexpr double m_electron = 9.1093837015e-28;     // g
inline constexpr double hbar = 1.054571817e-27;            // erg s

/// Reduced Compton wavelength hbar / (m c), cm.
inline constexpr double lambda_C = hbar / (m_electron * c_light);
/// Bohr magneton |e| hbar / (2 m c), erg/G.
inline constexpr double mu_B = -e_charge * hbar / (2.0 * m_electron * c_light);

inline constexpr double erg_per_ev = 1.602176634e-12;
inline constexpr double gauss_per_tesla = 1.0e4;
inline constexpr double cm_per_nm = 1.0e-7;

inline constexpr double pi = 3.14159265358979323846;

} // namespace cgs

/// Bundle of the constants above, for callers that prefer passing values.
struct PhysicalConstants {
    double e_charge = cgs::e_charge;
    double m_electron = cgs::m_electron;
    double c_light = cgs::c_light;
    double hbar = cgs::hbar;
    double lambda_C = cgs::lambda_C;
    double mu_B = cgs::mu_B;
};

inline constexpr PhysicalConstants codata2018{};

/// Uniform longitudinal field. `gauss` is the signed z-projection.
struct FieldSpec {
    double gauss = 0.0;

    static constexpr FieldSpec from_tesla(double tesla) { return FieldSpec{tesla * cgs::gauss_per_tesla}; }
    constexpr double tesla() const { return gauss / cgs::gauss_per_tesla; }
};

/// Signed cyclotron frequency eH/(mc), rad/s.
double cyclotron_frequency(double field_gauss);

/// Landau width sqrt(2 hbar c / |eH|), cm. Throws std::domain_error for H = 0.
double landau_width(double field_gauss);

/// sqrt(hbar c / |eH|), the magnetic length (about 26 nm at 1 T). Reported
/// next to landau_width() for comparison; the dynamics use landau_width().
double magnetic_length(double field_gauss);

/// Relativistic speed for a given kinetic energy in eV, cm/s. An infinite
/// energy gives c. Throws std::domain_error for negative energy.
double energy_to_velocity(double kinetic_ev);

constexpr double erg_to_ev(double erg) { return erg / cgs::erg_per_ev; }
constexpr double ev_to_erg(double ev) { return ev * cgs::erg_per_ev; }

constexpr double nm_to_cm(double nm) { return nm * cgs::cm_per_nm; }
constexpr double cm_to_nm(double cm) { return cm / cgs::cm_per_nm; }

} // namespace breathing
