#include "breathing/dynamics.hpp"

#include "breathing/constants.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace breathing {

int PacketQuantumNumbers::degeneracy() const { return 2 * n + std::abs(l) + 1; }

void PacketQuantumNumbers::validate() const
{
    if (n < 0)
        throw std::invalid_argument("radial quantum number n must be non-negative");
}

double BreathingParams::breathing_rate() const { return s_sign * std::abs(omega_c); }

double BreathingParams::period() const { return 2.0 * cgs::pi / std::abs(omega_c); }

int sign_function(double sigma0, double sigma0_prime, double sigma_L)
{
    if (sigma0_prime > 0.0)
        return 1;
    if (sigma0_prime < 0.0)
        return -1;
    if (sigma0 < sigma_L)
        return 1;
    if (sigma0 > sigma_L)
        return -1;
    return 0;
}

BreathingParams breathing_params(const InitialTransverseState& init, double field_gauss)
{
    if (!(init.sigma0 > 0.0))
        throw std::domain_error("initial width sigma0 must be positive");

    BreathingParams bp;
    bp.field_gauss = field_gauss;
    bp.sigma_L = landau_width(field_gauss);
    bp.omega_c = cyclotron_frequency(field_gauss);
    bp.s_sign = sign_function(init.sigma0, init.sigma0_prime, bp.sigma_L);

    const double s0sq = init.sigma0 * init.sigma0;
    const double q2 = (bp.sigma_L / init.sigma0) * (bp.sigma_L / init.sigma0);
    const double p = init.sigma0_prime * bp.sigma_L * bp.sigma_L / (cgs::c_light * cgs::lambda_C * init.sigma0);

    // sigma_st^2 - sigma_L^2 = (sigma0^2 / 2) ((1 - q^2)^2 + p^2) >= 0
    const double gap = 0.5 * s0sq * ((1.0 - q2) * (1.0 - q2) + p * p);
    const double sigma_L_sq = bp.sigma_L * bp.sigma_L;
    const double st_sq = sigma_L_sq + gap;
    bp.sigma_st = std::sqrt(st_sq);
    bp.excess = gap * (st_sq + sigma_L_sq);
    bp.sigma0_sq = s0sq;
    bp.slope = std::abs(p);
    bp.q4 = q2 * q2;

    if (bp.s_sign == 0 || bp.excess == 0.0) {
        bp.s_sign = 0;
        bp.amplitude = 0.0;
        bp.theta = 0.0;
        return bp;
    }

    const double root_excess = std::sqrt(bp.excess);
    bp.amplitude = root_excess / st_sq;
    // Principal arcsin branch: sin(theta) = (sigma_st^2 - sigma0^2) / sqrt(excess)
    // and cos(theta) = sigma0^2 |p| / sqrt(excess) >= 0.
    bp.theta = std::atan2(st_sq - s0sq, s0sq * std::abs(p));
    return bp;
}

namespace {

struct WidthAndRate {
    double sq;
    double rate;
};

// Same function as sigma_st^2 (1 + A sin(s|w_c|t - theta)), written in half
// angles around the initial state.
WidthAndRate width_and_rate(double t, const BreathingParams& bp)
{
    const double rate = bp.breathing_rate();
    const double h = 0.5 * rate * t;
    const double sh = std::sin(h);
    const double ch = std::cos(h);
    const double u = ch + bp.slope * sh;
    const double du = bp.slope * ch - sh; // 2 du/dh
    return {bp.sigma0_sq * (u * u + bp.q4 * sh * sh), bp.sigma0_sq * rate * (u * du + bp.q4 * sh * ch)};
}

} // namespace

double sigma_sq(double t, const BreathingParams& bp)
{
    if (bp.is_landau())
        return bp.sigma_st * bp.sigma_st;
    return width_and_rate(t, bp).sq;
}

double sigma_sq_rate(double t, const BreathingParams& bp)
{
    if (bp.is_landau())
        return 0.0;
    return width_and_rate(t, bp).rate;
}

RhoSqDerivatives rho_sq_derivatives(double t, const PacketQuantumNumbers& q, const BreathingParams& bp)
{
    const double scale = q.degeneracy() * bp.sigma_st * bp.sigma_st;
    RhoSqDerivatives out;
    if (bp.is_landau()) {
        out.d = {scale, 0.0, 0.0, 0.0};
        return out;
    }
    const double rate = bp.breathing_rate();
    const double phase = rate * t - bp.theta;
    const double s = std::sin(phase);
    const double c = std::cos(phase);
    const double a = scale * bp.amplitude;
    const WidthAndRate wr = width_and_rate(t, bp);
    const double g = q.degeneracy();
    out.d[0] = g * wr.sq;
    out.d[1] = g * wr.rate;
    out.d[2] = -a * rate * rate * s;
    out.d[3] = -a * rate * rate * rate * c;
    return out;
}

double rho_sq_derivative(double t, const PacketQuantumNumbers& q, const BreathingParams& bp, int order)
{
    if (order < 0 || order > 3)
        throw std::invalid_argument("derivative order must be in 0..3");
    return rho_sq_derivatives(t, q, bp)[order];
}

double inverse_curvature(double t, const BreathingParams& bp)
{
    if (bp.is_landau())
        return 0.0;
    return sigma_sq_rate(t, bp) / (2.0 * cgs::c_light * sigma_sq(t, bp));
}

} // namespace breathing
