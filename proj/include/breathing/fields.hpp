#pragma once

// Far-zone expanded potentials, fields, Poynting vector and angular-momentum
// flux of the breathing packet, as closed-form functions of the observation
// point. Every rho^2 derivative is taken at the retarded time tau = t - R/c.
//
// Terms are kept separated by their order in 1/R: fields split into far
// (1/R) and near (1/R^2) parts, the Poynting vector into far (1/R^2) and
// interference (1/R^3) parts. The 1/R^4 near-zone Poynting term carries no
// energy or angular momentum to infinity and is not computed.

#include "breathing/dynamics.hpp"
#include "breathing/sources.hpp"
#include "breathing/vec3.hpp"

namespace breathing {

/// Spherical coordinates of the observer; origin at the solenoid midpoint.
struct ObservationPoint {
    double R = 0.0;     ///< cm
    double theta = 0.0; ///< polar angle from +z
    double phi = 0.0;

    double R_perp() const;
    double Z() const;
};

double retarded_time(const ObservationPoint& obs, double t);

struct Potentials {
    double scalar = 0.0; ///< statV
    Cyl3 vector;         ///< statV
};

struct FieldPair {
    Cyl3 E; ///< statV/cm
    Cyl3 H; ///< G
};

struct EMFieldSample {
    FieldPair far;  ///< ~ 1/R
    FieldPair near; ///< ~ 1/R^2

    FieldPair total() const { return {far.E + near.E, far.H + near.H}; }
};

struct PoyntingDecomposition {
    Cyl3 far;          ///< ~ 1/R^2, erg/(cm^2 s)
    Cyl3 interference; ///< ~ 1/R^3, sum of the two parts below
    /// Interference terms linear in the rho^2 derivatives. They average to
    /// zero over a period but dominate the instantaneous value.
    Cyl3 interference_linear;
    /// Interference terms bilinear in the rho^2 derivatives; these carry the
    /// period-averaged angular momentum.
    Cyl3 interference_quadratic;
    double retarded_time = 0.0;
};

/// Scalar and vector potentials of the multipole-expanded retarded integrals.
/// Explicit factors of t (the drifting packet centroid) use the observation
/// time as printed; rho^2 and its derivatives use tau.
Potentials potentials(const ObservationPoint& obs, double t, const NslgState& state);

EMFieldSample em_fields(const ObservationPoint& obs, double t, const NslgState& state);
EMFieldSample em_fields_from_derivatives(const ObservationPoint& obs, const RhoSqDerivatives& d, const NslgState& state);

PoyntingDecomposition poynting(const ObservationPoint& obs, double t, const NslgState& state);
/// Same as poynting() with the rho^2 derivatives supplied by the caller
/// (already evaluated at the retarded time).
PoyntingDecomposition poynting_from_derivatives(const ObservationPoint& obs, const RhoSqDerivatives& d,
                                                const NslgState& state);

/// f = (1/c) R x S with R = R_perp e_r + Z e_z.
Cyl3 oam_flux_from_poynting(const ObservationPoint& obs, const Cyl3& S);

/// Angular-momentum flux density of the far Poynting term.
Cyl3 oam_flux_far(const ObservationPoint& obs, double t, const NslgState& state);

/// z rate of angular momentum through a sphere of radius R from the far
/// term: e^2 R w_c / (30 c^6) d3 rho^2 d2 rho^2. Oscillates; averages to zero.
double dLz_dt_far(double R, double t, const NslgState& state);

} // namespace breathing
