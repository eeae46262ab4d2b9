#include "breathing/sources.hpp"

#include "breathing/constants.hpp"

#include <cmath>
#include <cstdlib>

namespace breathing {

namespace {

constexpr double kSqrtPi = 1.77245385090551602729;

// log(N_perp^2) = log(n! / (pi (n + |l|)!))
double log_norm_sq(int n, int a)
{
    return std::lgamma(n + 1.0) - std::lgamma(n + a + 1.0) - std::log(cgs::pi);
}

// Transverse density times r^-shift, evaluated in log space so that
// r^{2|l|} and the Gaussian never overflow separately.
double transverse_density_scaled(double r_perp, double sig_sq, int n, int a, int shift)
{
    const double u = r_perp * r_perp / sig_sq;
    const double L = laguerre(n, a, u);
    if (L == 0.0)
        return 0.0;
    const int power = 2 * a - shift; // power of r in r^{2a} / r^shift
    double log_env = log_norm_sq(n, a) - std::log(sig_sq) - a * std::log(sig_sq) - u;
    if (power != 0) {
        if (r_perp == 0.0)
            return power > 0 ? 0.0 : INFINITY;
        log_env += power * std::log(r_perp);
    }
    return std::exp(log_env) * L * L;
}

} // namespace

double LongitudinalPacket::diffraction_time() const { return sigma_z * sigma_z / (cgs::c_light * cgs::lambda_C); }

double LongitudinalPacket::width_sq(double t) const
{
    const double spread = cgs::hbar * t / (cgs::m_electron * sigma_z);
    return sigma_z * sigma_z + spread * spread;
}

double LongitudinalPacket::normalization() const
{
    return std::sqrt(sigma_z / (2.0 * std::pow(cgs::pi, 1.5))) / cgs::hbar;
}

double laguerre(int n, int a, double x)
{
    if (n == 0)
        return 1.0;
    double prev = 1.0;
    double cur = 1.0 + a - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double longitudinal_density(double z, double t, const LongitudinalPacket& pkt)
{
    const double w2 = pkt.width_sq(t);
    const double zt = z - pkt.p0 * t / cgs::m_electron;
    return std::exp(-zt * zt / w2) / (kSqrtPi * std::sqrt(w2));
}

double transverse_density(double r_perp, double t, const PacketQuantumNumbers& q, const BreathingParams& bp)
{
    return transverse_density_scaled(r_perp, sigma_sq(t, bp), q.n, std::abs(q.l), 0);
}

double charge_density(double r_perp, double /*phi*/, double z, double t, const NslgState& state)
{
    return cgs::e_charge * transverse_density(r_perp, t, state.q, state.bp) * longitudinal_density(z, t, state.pkt);
}

Cyl3 current_density(double r_perp, double phi, double z, double t, const NslgState& state)
{
    return source_sample(r_perp, phi, z, t, state).j;
}

SourceSample source_sample(double r_perp, double /*phi*/, double z, double t, const NslgState& state)
{
    const int a = std::abs(state.q.l);
    const double sig_sq = sigma_sq(t, state.bp);
    const double par = longitudinal_density(z, t, state.pkt);
    const double rho = cgs::e_charge * par * transverse_density_scaled(r_perp, sig_sq, state.q.n, a, 0);

    SourceSample out;
    out.rho = rho;
    if (rho == 0.0)
        return out;

    const double m = cgs::m_electron;
    out.j.r = rho * cgs::c_light * r_perp * inverse_curvature(t, state.bp);

    // (hbar l / m) rho / r  -  (e H / 2 m c) r rho
    double azimuthal = -0.5 * state.bp.omega_c * r_perp * rho;
    if (state.q.l != 0) {
        const double rho_over_r = cgs::e_charge * par * transverse_density_scaled(r_perp, sig_sq, state.q.n, a, 1);
        azimuthal += cgs::hbar * state.q.l / m * rho_over_r;
    }
    out.j.phi = azimuthal;

    const LongitudinalPacket& pkt = state.pkt;
    const double w2 = pkt.width_sq(t);
    const double zt = z - pkt.p0 * t / m;
    const double spread_velocity = cgs::hbar * cgs::hbar * zt * t / (m * m * pkt.sigma_z * pkt.sigma_z * w2);
    out.j.z = rho * (spread_velocity + pkt.p0 / m);
    return out;
}

double charge_density_rate(double r_perp, double /*phi*/, double z, double t, const NslgState& state)
{
    const int n = state.q.n;
    const int a = std::abs(state.q.l);
    const double sig_sq = sigma_sq(t, state.bp);
    const double u = r_perp * r_perp / sig_sq;

    // Transverse: T = N^2 / sigma^2 F(u), F = u^a L^2 e^-u,
    // dT/dt = -(N^2 dsigma^2/dt / sigma^4) [(1 + a - u) F + 2 u^{a+1} L L' e^-u].
    // On a node of L both T and dT/dt vanish.
    const double L = laguerre(n, a, u);
    const double dL = n > 0 ? -laguerre(n - 1, a + 1, u) : 0.0;
    const double transverse = transverse_density_scaled(r_perp, sig_sq, n, a, 0);
    double transverse_rate = 0.0;
    if (transverse != 0.0 && !state.bp.is_landau()) {
        const double bracket = (1.0 + a - u) + 2.0 * u * dL / L;
        transverse_rate = -transverse * bracket * sigma_sq_rate(t, state.bp) / sig_sq;
    }

    const LongitudinalPacket& pkt = state.pkt;
    const double m = cgs::m_electron;
    const double w2 = pkt.width_sq(t);
    const double dw2 = 2.0 * cgs::hbar * cgs::hbar * t / (m * m * pkt.sigma_z * pkt.sigma_z);
    const double zt = z - pkt.p0 * t / m;
    const double par = longitudinal_density(z, t, pkt);
    const double log_par_rate = -0.5 * dw2 / w2 + 2.0 * zt * pkt.p0 / (m * w2) + zt * zt * dw2 / (w2 * w2);

    return cgs::e_charge * (transverse_rate * par + transverse * par * log_par_rate);
}

} // namespace breathing
