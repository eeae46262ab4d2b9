#include "breathing/kernels/sphere_flux.hpp"

#include "breathing/fields.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace breathing::kernels {

// Defined in the ISA-specific translation units. The stubs in those files
// return false from *_compiled() when the build target lacks the ISA.
bool avx2_compiled();
FluxMoments sphere_flux_moments_avx2(const SphereNodes& nodes, double R, const RhoSqDerivatives& d,
                                     const NslgState& state);
bool neon_compiled();
FluxMoments sphere_flux_moments_neon(const SphereNodes& nodes, double R, const RhoSqDerivatives& d,
                                     const NslgState& state);

namespace {

void add(Cart3& a, const Cart3& b)
{
    a.x += b.x;
    a.y += b.y;
    a.z += b.z;
}

void scale(Cart3& a, double k) { a = {a.x * k, a.y * k, a.z * k}; }

// Accumulate w * f, f given in the cylindrical basis at azimuth (cp, sp).
void add_rotated(Cart3& acc, double w, const Cyl3& f, double cp, double sp)
{
    acc.x += w * (f.r * cp - f.phi * sp);
    acc.y += w * (f.r * sp + f.phi * cp);
    acc.z += w * f.z;
}

} // namespace

FluxMoments& FluxMoments::operator+=(const FluxMoments& o)
{
    power_far += o.power_far;
    power_int_linear += o.power_int_linear;
    power_int_quadratic += o.power_int_quadratic;
    add(oam_far, o.oam_far);
    add(oam_int_linear, o.oam_int_linear);
    add(oam_int_quadratic, o.oam_int_quadratic);
    return *this;
}

FluxMoments& FluxMoments::operator*=(double k)
{
    power_far *= k;
    power_int_linear *= k;
    power_int_quadratic *= k;
    scale(oam_far, k);
    scale(oam_int_linear, k);
    scale(oam_int_quadratic, k);
    return *this;
}

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

bool isa_available(Isa isa)
{
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
        return avx2_compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Isa::neon: return neon_compiled();
    }
    return false;
}

namespace {

Isa resolve_isa()
{
    if (const char* env = std::getenv("BREATHING_SIMD")) {
        const std::string want{env};
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
            if (want == isa_name(isa) && isa_available(isa))
                return isa;
        if (want != "auto" && !want.empty())
            return Isa::scalar;
    }
    for (Isa isa : {Isa::avx2, Isa::neon})
        if (isa_available(isa))
            return isa;
    return Isa::scalar;
}

} // namespace

Isa active_isa()
{
    static const Isa isa = resolve_isa();
    return isa;
}

FluxMoments sphere_flux_moments_scalar(const SphereNodes& nodes, double R, const RhoSqDerivatives& d,
                                       const NslgState& state)
{
    FluxMoments acc;
    const double area = R * R;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const ObservationPoint obs{R, nodes.theta[i], nodes.phi[i]};
        const PoyntingDecomposition S = poynting_from_derivatives(obs, d, state);
        const double s = nodes.sin_theta[i];
        const double u = nodes.cos_theta[i];
        const double cp = nodes.cos_phi[i];
        const double sp = nodes.sin_phi[i];
        const double wa = nodes.weight[i] * area;

        acc.power_far += wa * (S.far.r * s + S.far.z * u);
        acc.power_int_linear += wa * (S.interference_linear.r * s + S.interference_linear.z * u);
        acc.power_int_quadratic += wa * (S.interference_quadratic.r * s + S.interference_quadratic.z * u);

        add_rotated(acc.oam_far, wa, oam_flux_from_poynting(obs, S.far), cp, sp);
        add_rotated(acc.oam_int_linear, wa, oam_flux_from_poynting(obs, S.interference_linear), cp, sp);
        add_rotated(acc.oam_int_quadratic, wa, oam_flux_from_poynting(obs, S.interference_quadratic), cp, sp);
    }
    return acc;
}

FluxMoments sphere_flux_moments_isa(Isa isa, const SphereNodes& nodes, double R, const RhoSqDerivatives& d,
                                    const NslgState& state)
{
    if (!isa_available(isa))
        throw std::runtime_error("flux kernel variant '" + std::string(isa_name(isa)) + "' is not available");
    switch (isa) {
    case Isa::avx2: return sphere_flux_moments_avx2(nodes, R, d, state);
    case Isa::neon: return sphere_flux_moments_neon(nodes, R, d, state);
    case Isa::scalar: break;
    }
    return sphere_flux_moments_scalar(nodes, R, d, state);
}

FluxMoments sphere_flux_moments(const SphereNodes& nodes, double R, const RhoSqDerivatives& d, const NslgState& state)
{
    return sphere_flux_moments_isa(active_isa(), nodes, R, d, state);
}

} // namespace breathing::kernels
