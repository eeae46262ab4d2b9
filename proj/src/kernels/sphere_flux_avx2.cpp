// Compiled with -mavx2 -mfma on x86-64; see src/CMakeLists.txt.

#include "breathing/kernels/sphere_flux.hpp"

#include "flux_coefficients.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#endif

namespace breathing::kernels {

#if defined(__AVX2__) && defined(__FMA__)

bool avx2_compiled() { return true; }

namespace {

struct V4 {
    __m256d v;
    V4(double x) : v(_mm256_set1_pd(x)) {}
    V4(__m256d x) : v(x) {}
};

inline V4 operator+(V4 a, V4 b) { return _mm256_add_pd(a.v, b.v); }
inline V4 operator-(V4 a, V4 b) { return _mm256_sub_pd(a.v, b.v); }
inline V4 operator*(V4 a, V4 b) { return _mm256_mul_pd(a.v, b.v); }
inline V4 operator-(V4 a) { return _mm256_xor_pd(a.v, _mm256_set1_pd(-0.0)); }

inline double hsum(V4 x)
{
    const __m128d lo = _mm256_castpd256_pd128(x.v);
    const __m128d hi = _mm256_extractf128_pd(x.v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

} // namespace

FluxMoments sphere_flux_moments_avx2(const SphereNodes& nodes, double R, const RhoSqDerivatives& d,
                                     const NslgState& state)
{
    const detail::FluxCoefficients k = detail::flux_coefficients(R, d, state);
    const std::size_t n = nodes.size();
    const std::size_t n4 = n - n % 4;

    detail::LaneSums<V4> acc;
    for (std::size_t i = 0; i < n4; i += 4)
        detail::accumulate_nodes<V4>(k, _mm256_loadu_pd(&nodes.sin_theta[i]), _mm256_loadu_pd(&nodes.cos_theta[i]),
                                     _mm256_loadu_pd(&nodes.cos_phi[i]), _mm256_loadu_pd(&nodes.sin_phi[i]),
                                     _mm256_loadu_pd(&nodes.weight[i]), acc);

    FluxMoments out;
    detail::reduce_into(acc, [](V4 x) { return hsum(x); }, out);
    detail::accumulate_tail(k, nodes, n4, n, out);
    return out;
}

#else

bool avx2_compiled() { return false; }

FluxMoments sphere_flux_moments_avx2(const SphereNodes& nodes, double R, const RhoSqDerivatives& d,
                                     const NslgState& state)
{
    return sphere_flux_moments_scalar(nodes, R, d, state);
}

#endif

} // namespace breathing::kernels
