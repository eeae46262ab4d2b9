#include "breathing/kernels/sphere_flux.hpp"

#include "flux_coefficients.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>
#endif

namespace breathing::kernels {

#if defined(__aarch64__) && defined(__ARM_NEON)

bool neon_compiled() { return true; }

namespace {

struct V2 {
    float64x2_t v;
    V2(double x) : v(vdupq_n_f64(x)) {}
    V2(float64x2_t x) : v(x) {}
};

inline V2 operator+(V2 a, V2 b) { return vaddq_f64(a.v, b.v); }
inline V2 operator-(V2 a, V2 b) { return vsubq_f64(a.v, b.v); }
inline V2 operator*(V2 a, V2 b) { return vmulq_f64(a.v, b.v); }
inline V2 operator-(V2 a) { return vnegq_f64(a.v); }

} // namespace

FluxMoments sphere_flux_moments_neon(const SphereNodes& nodes, double R, const RhoSqDerivatives& d,
                                     const NslgState& state)
{
    const detail::FluxCoefficients k = detail::flux_coefficients(R, d, state);
    const std::size_t n = nodes.size();
    const std::size_t n2 = n - n % 2;

    detail::LaneSums<V2> acc;
    for (std::size_t i = 0; i < n2; i += 2)
        detail::accumulate_nodes<V2>(k, vld1q_f64(&nodes.sin_theta[i]), vld1q_f64(&nodes.cos_theta[i]),
                                     vld1q_f64(&nodes.cos_phi[i]), vld1q_f64(&nodes.sin_phi[i]),
                                     vld1q_f64(&nodes.weight[i]), acc);

    FluxMoments out;
    detail::reduce_into(acc, [](V2 x) { return vaddvq_f64(x.v); }, out);
    detail::accumulate_tail(k, nodes, n2, n, out);
    return out;
}

#else

bool neon_compiled() { return false; }

FluxMoments sphere_flux_moments_neon(const SphereNodes& nodes, double R, const RhoSqDerivatives& d,
                                     const NslgState& state)
{
    return sphere_flux_moments_scalar(nodes, R, d, state);
}

#endif

} // namespace breathing::kernels
