#pragma once

// Charge and current densities of the NSLG state: a Laguerre-Gaussian
// transverse profile that breathes with sigma(t), times a freely spreading
// longitudinal Gaussian packet.

#include "breathing/dynamics.hpp"
#include "breathing/vec3.hpp"

namespace breathing {

struct LongitudinalPacket {
    double p0 = 0.0;      ///< mean momentum, g cm/s
    double sigma_z = 0.0; ///< waist, cm

    /// sigma_z^2 / (c lambda_C)
    double diffraction_time() const;
    /// w^2(t) = sigma_z^2 + hbar^2 t^2 / (m^2 sigma_z^2); |psi|^2 ~ exp(-z~^2 / w^2)
    double width_sq(double t) const;
    /// sqrt(sigma_z / (2 pi^{3/2})) / hbar, the momentum-space normalization.
    double normalization() const;
};

/// Full state: quantum numbers, breathing transverse part, longitudinal packet.
struct NslgState {
    PacketQuantumNumbers q;
    BreathingParams bp;
    LongitudinalPacket pkt;
};

/// Generalized Laguerre polynomial L_n^a(x) by upward recurrence in n.
double laguerre(int n, int a, double x);

/// |psi_par(z, t)|^2, unit normalized, 1/cm.
double longitudinal_density(double z, double t, const LongitudinalPacket& pkt);

/// Probability density of the transverse profile at radius r, 1/cm^2.
double transverse_density(double r_perp, double t, const PacketQuantumNumbers& q, const BreathingParams& bp);

struct SourceSample {
    double rho = 0.0; ///< statC/cm^3
    Cyl3 j;           ///< statC/(cm^2 s) in (e_r, e_phi, e_z) at the source point
};

/// rho = e |Psi|^2; independent of phi.
double charge_density(double r_perp, double phi, double z, double t, const NslgState& state);

Cyl3 current_density(double r_perp, double phi, double z, double t, const NslgState& state);

SourceSample source_sample(double r_perp, double phi, double z, double t, const NslgState& state);

/// d rho / dt from the analytic time dependence of sigma(t), w(t) and the
/// packet centroid.
double charge_density_rate(double r_perp, double phi, double z, double t, const NslgState& state);

} // namespace breathing
