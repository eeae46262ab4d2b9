#pragma once

// Sphere-integrated Poynting and angular-momentum flux at one retarded time.
//
// The inner loop runs over (theta, phi) quadrature nodes of a sphere of
// radius R and evaluates the far and interference Poynting terms at each.
// A scalar reference and SIMD variants (AVX2+FMA on x86-64, NEON on
// AArch64) are provided; the variant is picked once at runtime and can be
// pinned with the environment variable BREATHING_SIMD=scalar|avx2|neon.

#include "breathing/dynamics.hpp"
#include "breathing/sources.hpp"
#include "breathing/vec3.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace breathing::kernels {

/// Flattened tensor-product nodes; `weight` is the solid-angle weight.
struct SphereNodes {
    std::vector<double> theta, phi;
    std::vector<double> sin_theta, cos_theta;
    std::vector<double> sin_phi, cos_phi;
    std::vector<double> weight;

    std::size_t size() const { return weight.size(); }
};

/// Sums over the sphere at one time; vectors in Cartesian components. The
/// interference flux is kept as its linear and bilinear parts in the rho^2
/// derivatives, so that period averages of the bilinear part do not drown in
/// rounding of the much larger, zero-mean linear part.
struct FluxMoments {
    double power_far = 0.0;           ///< erg/s, int S_far . dA
    double power_int_linear = 0.0;    ///< int S_int . dA, linear part
    double power_int_quadratic = 0.0; ///< bilinear part
    Cart3 oam_far;                    ///< erg, int (1/c) R x S_far dA
    Cart3 oam_int_linear;
    Cart3 oam_int_quadratic;

    double power_int() const { return power_int_linear + power_int_quadratic; }
    Cart3 oam_int() const
    {
        return {oam_int_linear.x + oam_int_quadratic.x, oam_int_linear.y + oam_int_quadratic.y,
                oam_int_linear.z + oam_int_quadratic.z};
    }

    FluxMoments& operator+=(const FluxMoments& o);
    FluxMoments& operator*=(double k);
};

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
/// Variant used by sphere_flux_moments(). Resolved once per process.
Isa active_isa();

FluxMoments sphere_flux_moments_scalar(const SphereNodes& nodes, double R, const RhoSqDerivatives& d,
                                       const NslgState& state);
/// Throws std::runtime_error when the variant is not available on this CPU/build.
FluxMoments sphere_flux_moments_isa(Isa isa, const SphereNodes& nodes, double R, const RhoSqDerivatives& d,
                                    const NslgState& state);
FluxMoments sphere_flux_moments(const SphereNodes& nodes, double R, const RhoSqDerivatives& d, const NslgState& state);

} // namespace breathing::kernels
