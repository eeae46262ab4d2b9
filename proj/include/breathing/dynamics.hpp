#pragma once

// Breathing optical functions of a nonstationary Laguerre-Gaussian packet in
// a uniform longitudinal magnetic field.
//
// The width deviation oscillates as
//     sigma^2(t) = sigma_st^2 (1 + A sin(s |w_c| t - theta)),
//     A = sqrt(1 - (sigma_L / sigma_st)^4),
// and the mean square radius is rho^2(t) = (2n + |l| + 1) sigma^2(t).

#include <array>
#include <cstddef>

namespace breathing {

struct PacketQuantumNumbers {
    int n = 0; ///< radial, n >= 0
    int l = 0; ///< orbital

    /// 2n + |l| + 1
    int degeneracy() const;
    void validate() const;
};

struct InitialTransverseState {
    double sigma0 = 0.0;       ///< cm, > 0
    double sigma0_prime = 0.0; ///< cm/s
};

struct BreathingParams {
    double sigma_st = 0.0;  ///< cm
    double theta = 0.0;     ///< breathing phase offset, rad
    int s_sign = 0;         ///< -1, 0, +1
    double sigma_L = 0.0;   ///< cm
    double omega_c = 0.0;   ///< signed cyclotron frequency, rad/s
    double field_gauss = 0.0;
    double amplitude = 0.0; ///< A, in [0, 1)
    /// sigma_st^4 - sigma_L^4, computed without cancellation. Every radiated
    /// quantity is proportional to it.
    double excess = 0.0;
    /// Initial-state terms of the equivalent form
    ///     sigma^2 = sigma0^2 [(cos h + |p| sin h)^2 + q^4 sin^2 h],  h = s |w_c| t / 2,
    /// with q = sigma_L / sigma0 and p the scaled initial slope. It is a sum of
    /// squares, so it keeps full relative accuracy where 1 + A sin(...) cancels.
    double sigma0_sq = 0.0;
    double slope = 0.0; ///< |p|
    double q4 = 0.0;

    /// Signed angular frequency of the breathing phase, s |w_c|.
    double breathing_rate() const;
    /// Cyclotron period 2 pi / |w_c|.
    double period() const;
    bool is_landau() const { return s_sign == 0; }
};

/// Expansion (+1), contraction (-1), or stationary Landau state (0).
int sign_function(double sigma0, double sigma0_prime, double sigma_L);

/// Throws std::domain_error on zero field or non-positive sigma0.
BreathingParams breathing_params(const InitialTransverseState& init, double field_gauss);

double sigma_sq(double t, const BreathingParams& bp);

/// d/dt sigma^2
double sigma_sq_rate(double t, const BreathingParams& bp);

/// rho^2 and its first three time derivatives at one instant.
struct RhoSqDerivatives {
    std::array<double, 4> d{}; ///< d[k] = d^k rho^2 / dt^k

    double operator[](int k) const { return d[static_cast<std::size_t>(k)]; }
};

RhoSqDerivatives rho_sq_derivatives(double t, const PacketQuantumNumbers& q, const BreathingParams& bp);

/// Single derivative of order 0..3; throws std::invalid_argument otherwise.
double rho_sq_derivative(double t, const PacketQuantumNumbers& q, const BreathingParams& bp, int order);

/// 1/R(t) = sigma'(t) / (c sigma(t)). Kept as the inverse because R itself
/// diverges at the breathing turning points.
double inverse_curvature(double t, const BreathingParams& bp);

} // namespace breathing
