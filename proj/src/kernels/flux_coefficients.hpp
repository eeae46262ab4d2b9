#pragma once

// Per-time-sample constants of the far and interference Poynting terms in
// terms of s = sin(theta), u = cos(theta), and the per-node evaluation written
// once over a lane type V. V is double for remainders and a thin wrapper over
// the SIMD register in each ISA file; it needs +, -, *, unary - and
// broadcast construction from double.

#include "breathing/constants.hpp"
#include "breathing/dynamics.hpp"
#include "breathing/kernels/sphere_flux.hpp"
#include "breathing/sources.hpp"

namespace breathing::kernels::detail {

struct FluxCoefficients {
    double far_scale; // e^2 / (64 pi R^2 c^5)
    double a_r;       // w^2 d2^2
    double a_phi;     // w d3 d2
    double a_z;       // d3^2 + w^2 d2^2

    double int_scale; // e^2 / (16 pi R^3 c^2)
    // linear parts
    double d3;
    double lin_phi;         // -w d2
    double one_minus_alpha; // 1 - hbar^2 / (2 sz^2 m^2 c^2)
    double alpha;
    double drift;           // p0 / (m c)
    double gamma;           // e H p0 / (m^2 c^2 w)
    double beta_minus_one;  // 3 sigma_p^2 / (2 m^2 c^2) - 1
    // bilinear parts
    double b1;        // w^2 d2 d1 / (2 c^2)
    double w_b2;      // w d3 d1 / (4 c^2)
    double w_d2sq;    // w d2^2 / (4 c^2)
    double quad_z;    // (d3 d2 + w^2 d2 d1) / c^2

    double oam_scale; // R / c
    double area;      // R^2
};

inline FluxCoefficients flux_coefficients(double R, const RhoSqDerivatives& d, const NslgState& state)
{
    constexpr double c = cgs::c_light;
    constexpr double m = cgs::m_electron;
    constexpr double e = cgs::e_charge;
    constexpr double hbar = cgs::hbar;
    const double c2 = c * c;
    const double m2c2 = m * m * c2;
    const double w = state.bp.omega_c;
    const double sz = state.pkt.sigma_z;
    const double p0 = state.pkt.p0;
    const double sigma_p = hbar / sz;

    FluxCoefficients k{};
    k.far_scale = e * e / (64.0 * cgs::pi * R * R * c2 * c2 * c);
    k.a_r = w * w * d[2] * d[2];
    k.a_phi = w * d[3] * d[2];
    k.a_z = d[3] * d[3] + w * w * d[2] * d[2];

    k.int_scale = e * e / (16.0 * cgs::pi * R * R * R * c2);
    k.d3 = d[3];
    k.lin_phi = -w * d[2];
    k.alpha = hbar * hbar / (2.0 * sz * sz * m2c2);
    k.one_minus_alpha = 1.0 - k.alpha;
    k.drift = p0 / (m * c);
    k.gamma = w == 0.0 ? 0.0 : e * state.bp.field_gauss * p0 / (m2c2 * w);
    k.beta_minus_one = 3.0 * sigma_p * sigma_p / (2.0 * m2c2) - 1.0;

    k.b1 = w * w * d[2] * d[1] / (2.0 * c2);
    k.w_b2 = w * d[3] * d[1] / (4.0 * c2);
    k.w_d2sq = w * d[2] * d[2] / (4.0 * c2);
    k.quad_z = (d[3] * d[2] + w * w * d[2] * d[1]) / c2;

    k.oam_scale = R / c;
    k.area = R * R;
    return k;
}

template <class V>
struct LaneSums {
    V power_far{0.0}, power_lin{0.0}, power_quad{0.0};
    V far_x{0.0}, far_y{0.0}, far_z{0.0};
    V lin_x{0.0}, lin_y{0.0}, lin_z{0.0};
    V quad_x{0.0}, quad_y{0.0}, quad_z{0.0};
};

template <class V>
inline void accumulate_oam(V& ax, V& ay, V& az, V wo, V s, V u, V cp, V sp, V fr, V fphi, V fz)
{
    // (1/c) R x S in (r, phi, z), rotated to Cartesian.
    const V f_r = -(u * fphi);
    const V f_phi = u * fr - s * fz;
    ax = ax + wo * (f_r * cp - f_phi * sp);
    ay = ay + wo * (f_r * sp + f_phi * cp);
    az = az + wo * (s * fphi);
}

template <class V>
inline void accumulate_nodes(const FluxCoefficients& k, V s, V u, V cp, V sp, V weight, LaneSums<V>& acc)
{
    const V one{1.0}, two{2.0}, three{3.0};
    const V s2 = s * s;
    const V u2 = u * u;
    const V q{k.drift};

    const V fs3 = V{k.far_scale} * s2 * s;
    const V fr = fs3 * V{k.a_r};
    const V fphi = fs3 * V{k.a_phi};
    const V fz = V{k.far_scale} * s2 * u * V{k.a_z};

    const V lr = V{k.d3} * u * (u * V{k.one_minus_alpha} - q * (s2 - two * u2 + u * q));
    const V lphi = V{k.lin_phi} * (one - V{k.alpha} * u2 + V{k.gamma} * u * (two - u * q));
    const V lz = s * V{k.d3} * (u * V{k.beta_minus_one} - q * (one + two * u * q + three * u2));

    const V qr = V{k.b1} * (two * s2 - one);
    const V qphi = V{k.w_b2} * (three * s2 - two) + V{k.w_d2sq} * s2;
    const V qz = s * u * V{k.quad_z};

    const V is = V{k.int_scale} * s;
    const V ilr = is * lr, ilphi = is * lphi, ilz = is * lz;
    const V iqr = is * qr, iqphi = is * qphi, iqz = is * qz;

    const V wa = weight * V{k.area};
    acc.power_far = acc.power_far + wa * (fr * s + fz * u);
    acc.power_lin = acc.power_lin + wa * (ilr * s + ilz * u);
    acc.power_quad = acc.power_quad + wa * (iqr * s + iqz * u);

    const V wo = wa * V{k.oam_scale};
    accumulate_oam(acc.far_x, acc.far_y, acc.far_z, wo, s, u, cp, sp, fr, fphi, fz);
    accumulate_oam(acc.lin_x, acc.lin_y, acc.lin_z, wo, s, u, cp, sp, ilr, ilphi, ilz);
    accumulate_oam(acc.quad_x, acc.quad_y, acc.quad_z, wo, s, u, cp, sp, iqr, iqphi, iqz);
}

/// Reduce lane sums with `hsum` and add into `out`.
template <class V, class HSum>
inline void reduce_into(const LaneSums<V>& acc, HSum hsum, FluxMoments& out)
{
    out.power_far += hsum(acc.power_far);
    out.power_int_linear += hsum(acc.power_lin);
    out.power_int_quadratic += hsum(acc.power_quad);
    out.oam_far.x += hsum(acc.far_x);
    out.oam_far.y += hsum(acc.far_y);
    out.oam_far.z += hsum(acc.far_z);
    out.oam_int_linear.x += hsum(acc.lin_x);
    out.oam_int_linear.y += hsum(acc.lin_y);
    out.oam_int_linear.z += hsum(acc.lin_z);
    out.oam_int_quadratic.x += hsum(acc.quad_x);
    out.oam_int_quadratic.y += hsum(acc.quad_y);
    out.oam_int_quadratic.z += hsum(acc.quad_z);
}

/// Remainder nodes [begin, end) in plain double arithmetic.
inline void accumulate_tail(const FluxCoefficients& k, const SphereNodes& nodes, std::size_t begin, std::size_t end,
                            FluxMoments& out)
{
    LaneSums<double> acc;
    for (std::size_t i = begin; i < end; ++i)
        accumulate_nodes<double>(k, nodes.sin_theta[i], nodes.cos_theta[i], nodes.cos_phi[i], nodes.sin_phi[i],
                                 nodes.weight[i], acc);
    reduce_into(acc, [](double v) { return v; }, out);
}

} // namespace breathing::kernels::detail
