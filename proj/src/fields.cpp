#include "breathing/fields.hpp"

#include "breathing/constants.hpp"

#include <cmath>

namespace breathing {

namespace {

constexpr double c = cgs::c_light;
constexpr double m = cgs::m_electron;
constexpr double e = cgs::e_charge;
constexpr double hbar = cgs::hbar;
constexpr double lc = cgs::lambda_C;

} // namespace

double ObservationPoint::R_perp() const { return R * std::sin(theta); }
double ObservationPoint::Z() const { return R * std::cos(theta); }

double retarded_time(const ObservationPoint& obs, double t) { return t - obs.R / c; }

Potentials potentials(const ObservationPoint& obs, double t, const NslgState& state)
{
    const double R = obs.R;
    const double Rp = obs.R_perp();
    const double Z = obs.Z();
    const RhoSqDerivatives d = rho_sq_derivatives(retarded_time(obs, t), state.q, state.bp);
    const double H = state.bp.field_gauss;
    const double p0 = state.pkt.p0;
    const double sz = state.pkt.sigma_z;
    const int l = state.q.l;

    Potentials out;
    out.scalar = e / R * (1.0 + Z * p0 * t / (R * R * m));

    const double k = e * hbar / (2.0 * R * R * m * c * c);
    out.vector.r = k * Rp / (2.0 * lc * c) * (c / R * d[1] + d[2]);
    out.vector.phi = k * Rp * (l * c / R - e * H / (2.0 * hbar * c) * (c * d[0] / R + d[1]));
    out.vector.z = k * 2.0 / hbar * (Z * c * t / (R * m) * (hbar * hbar / (2.0 * sz * sz) + p0 * p0) + R * p0 * c);
    return out;
}

EMFieldSample em_fields_from_derivatives(const ObservationPoint& obs, const RhoSqDerivatives& d, const NslgState& state)
{
    const double R = obs.R;
    const double Rp = obs.R_perp();
    const double Z = obs.Z();
    const double R2 = R * R;
    const double R3 = R2 * R;
    const double c4 = c * c * c * c;
    const double H = state.bp.field_gauss;
    const double p0 = state.pkt.p0;
    const double sz = state.pkt.sigma_z;

    EMFieldSample f;

    // E, e_r:  e Rp/R^2 [ (1/R)(1 + 3 Z p0/(R m c)) - hbar/(4 lc m c^4) ((c/R) d2 + d3) ]
    {
        const double pre = e * Rp / R2;
        const double k = hbar / (4.0 * lc * m * c4);
        f.near.E.r = pre * (1.0 / R * (1.0 + 3.0 * Z * p0 / (R * m * c)) - k * c / R * d[2]);
        f.far.E.r = -pre * k * d[3];
    }
    // E, e_phi:  e^2 H Rp / (4 R^2 m c^4) ((c/R) d1 + d2)
    {
        const double pre = e * e * H * Rp / (4.0 * R2 * m * c4);
        f.near.E.phi = pre * c / R * d[1];
        f.far.E.phi = pre * d[2];
    }
    // E, e_z:  e/R^3 [ Z {1 - (hbar^2/(2 sz^2) + p0^2)/(m^2 c^2)} + (2 Z^2 - Rp^2) p0/(R m c) ]
    f.near.E.z = e / R3 *
                 (Z * (1.0 - (hbar * hbar / (2.0 * sz * sz) + p0 * p0) / (m * m * c * c)) +
                  (2.0 * Z * Z - Rp * Rp) * p0 / (R * m * c));

    // H, e_r:  -e^2 H Rp Z / (4 R^3 m c^4) ((3c/R) d1 + d2)
    {
        const double pre = -e * e * H * Rp * Z / (4.0 * R3 * m * c4);
        f.near.H.r = pre * 3.0 * c / R * d[1];
        f.far.H.r = pre * d[2];
    }
    // H, e_phi:  e hbar Rp / (2 R^3 m c^4) [ -Z/(2 lc) ((3c/R) d2 + d3) + 3 hbar Z c^2/(R m sz^2)
    //                                         + (2 p0 c^3/hbar)(1 + 2 Z p0/(R m c)) ]
    {
        const double pre = e * hbar * Rp / (2.0 * R3 * m * c4);
        f.far.H.phi = pre * (-Z / (2.0 * lc)) * d[3];
        f.near.H.phi = pre * (-Z / (2.0 * lc) * 3.0 * c / R * d[2] + 3.0 * hbar * Z * c * c / (R * m * sz * sz) +
                              2.0 * p0 * c * c * c / hbar * (1.0 + 2.0 * Z * p0 / (R * m * c)));
    }
    // H, e_z:  e^2 H / (4 R^2 m c^3) (3 Rp^2/R^2 d1 + Rp^2/(R c) d2 - 2 d1)
    {
        const double pre = e * e * H / (4.0 * R2 * m * c * c * c);
        f.far.H.z = pre * Rp * Rp / (R * c) * d[2];
        f.near.H.z = pre * (3.0 * Rp * Rp / R2 * d[1] - 2.0 * d[1]);
    }
    return f;
}

EMFieldSample em_fields(const ObservationPoint& obs, double t, const NslgState& state)
{
    return em_fields_from_derivatives(obs, rho_sq_derivatives(retarded_time(obs, t), state.q, state.bp), state);
}

PoyntingDecomposition poynting_from_derivatives(const ObservationPoint& obs, const RhoSqDerivatives& d,
                                                const NslgState& state)
{
    const double R = obs.R;
    const double Rp = obs.R_perp();
    const double Z = obs.Z();
    const double R2 = R * R;
    const double c2 = c * c;
    const double w = state.bp.omega_c;
    const double w2 = w * w;
    const double H = state.bp.field_gauss;
    const double p0 = state.pkt.p0;
    const double sz = state.pkt.sigma_z;
    const double sigma_p = hbar / sz;
    const double m2c2 = m * m * c2;
    const double d1 = d[1];
    const double d2 = d[2];
    const double d3 = d[3];

    PoyntingDecomposition S;

    // e^2 Rp^2 / (64 pi R^5 c^5) [ w^2 Rp d2^2 e_r + w Rp d3 d2 e_phi + Z (d3^2 + w^2 d2^2) e_z ]
    {
        const double pre = e * e * Rp * Rp / (64.0 * cgs::pi * R2 * R2 * R * c2 * c2 * c);
        S.far.r = pre * w2 * Rp * d2 * d2;
        S.far.phi = pre * w * Rp * d3 * d2;
        S.far.z = pre * Z * (d3 * d3 + w2 * d2 * d2);
    }

    // e^2 Rp / (16 pi R^4 c^2) [ {..} e_r + w {..} e_phi + (Rp/R) {..} e_z ], with each
    // bracket split into its linear and bilinear parts in the rho^2 derivatives.
    {
        const double pre = e * e * Rp / (16.0 * cgs::pi * R2 * R2 * c2);
        const double drift = hbar * p0 / (lc * m2c2); // = p0 / (m c)

        const double quad_r = w2 * d2 * d1 / (2.0 * c2) * (2.0 * Rp * Rp / R2 - 1.0);
        const double lin_r = Z * d3 / R2 *
                             (Z - hbar * hbar * Z / (2.0 * sz * sz * m2c2) -
                              drift * ((Rp * Rp - 2.0 * Z * Z) / R + Z * p0 / (m * c)));

        const double quad_phi = w * (d3 * d1 / (4.0 * c2) * (3.0 * Rp * Rp / R2 - 2.0) + d2 * Rp * Rp * d2 / (4.0 * R2 * c2));
        const double lin_phi = -w * d2 *
                               (1.0 - hbar * hbar * Z * Z / (2.0 * sz * sz * R2 * m2c2) +
                                e * H * Z * p0 / (R * m2c2 * w) * (2.0 - Z * p0 / (R * m * c)));

        const double quad_z = Rp / R * (d3 * Z * d2 / (R * c2) + w2 * Z * d2 * d1 / (R * c2));
        const double lin_z = Rp / R * d3 *
                             (3.0 * Z * sigma_p * sigma_p / (2.0 * R * m2c2) - Z / R -
                              drift * (1.0 + 2.0 * Z * p0 / (R * m * c) + 3.0 * Z * Z / R2));

        S.interference_linear = Cyl3{lin_r, lin_phi, lin_z} * pre;
        S.interference_quadratic = Cyl3{quad_r, quad_phi, quad_z} * pre;
        S.interference = S.interference_linear + S.interference_quadratic;
    }
    return S;
}

PoyntingDecomposition poynting(const ObservationPoint& obs, double t, const NslgState& state)
{
    const double tau = retarded_time(obs, t);
    PoyntingDecomposition S = poynting_from_derivatives(obs, rho_sq_derivatives(tau, state.q, state.bp), state);
    S.retarded_time = tau;
    return S;
}

Cyl3 oam_flux_from_poynting(const ObservationPoint& obs, const Cyl3& S)
{
    const Cyl3 radius{obs.R_perp(), 0.0, obs.Z()};
    return cross(radius, S) * (1.0 / c);
}

Cyl3 oam_flux_far(const ObservationPoint& obs, double t, const NslgState& state)
{
    const double R = obs.R;
    const double Rp = obs.R_perp();
    const double Z = obs.Z();
    const double w = state.bp.omega_c;
    const RhoSqDerivatives d = rho_sq_derivatives(retarded_time(obs, t), state.q, state.bp);
    const double c6 = c * c * c * c * c * c;
    const double pre = e * e * Rp * Rp / (64.0 * cgs::pi * R * R * R * R * R * c6);
    return Cyl3{-w * Rp * Z * d[3] * d[2], -Rp * Z * d[3] * d[3], w * Rp * Rp * d[3] * d[2]} * pre;
}

double dLz_dt_far(double R, double t, const NslgState& state)
{
    const RhoSqDerivatives d = rho_sq_derivatives(t - R / c, state.q, state.bp);
    const double c6 = c * c * c * c * c * c;
    return e * e * R * state.bp.omega_c / (30.0 * c6) * d[3] * d[2];
}

} // namespace breathing
