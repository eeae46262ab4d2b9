#include "breathing/quadrature.hpp"

#include "breathing/constants.hpp"
#include "breathing/fields.hpp"
#include "breathing/observables.hpp"

#include "../support/generators.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace breathing;
using breathing::testing::Gen;
using breathing::testing::rel_diff;
using doctest::Approx;

namespace {

NslgState breathing_state(Gen& gen)
{
    for (;;) {
        NslgState st = gen.state();
        if (!st.bp.is_landau())
            return st;
    }
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("Gauss-Legendre rules")
{
    for (int n : {1, 2, 3, 8, 32, 100}) {
        const GaussLegendreRule g = gauss_legendre(n);
        REQUIRE(g.nodes.size() == static_cast<std::size_t>(n));
        CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == Approx(2.0).epsilon(1e-14));
        for (int i = 0; i < n; ++i) {
            CHECK(g.nodes[i] == Approx(-g.nodes[n - 1 - i]).scale(1.0).epsilon(1e-15));
            CHECK(g.weights[i] > 0.0);
            if (i > 0)
                CHECK(g.nodes[i] > g.nodes[i - 1]);
        }
        // exact through degree 2n - 1
        for (int k = 0; k <= 2 * n - 1 && k <= 40; ++k) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i)
                sum += g.weights[i] * std::pow(g.nodes[i], k);
            const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            CHECK(sum == Approx(exact).scale(1.0).epsilon(1e-14));
        }
    }
    CHECK(gauss_legendre(1).nodes[0] == 0.0);
    CHECK(gauss_legendre(1).weights[0] == 2.0);
    CHECK(gauss_legendre(2).nodes[1] == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("composite integration")
{
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, cgs::pi) == Approx(2.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 32, 8) ==
          Approx(std::sqrt(cgs::pi)).epsilon(1e-14));
    CHECK(integrate([](double) { return 1.0; }, 3.0, 1.0) == Approx(-2.0));
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, 8, 0), std::invalid_argument);
}

TEST_CASE("sphere nodes integrate spherical harmonics")
{
    const kernels::SphereNodes s = make_sphere_nodes(16, 8);
    REQUIRE(s.size() == 128);
    double area = 0.0, z2 = 0.0, xy = 0.0, x2y2 = 0.0, x2 = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = s.sin_theta[i] * s.cos_phi[i];
        const double y = s.sin_theta[i] * s.sin_phi[i];
        const double z = s.cos_theta[i];
        CHECK(std::cos(s.theta[i]) == Approx(z).epsilon(1e-14));
        CHECK(std::sin(s.phi[i]) == Approx(s.sin_phi[i]).scale(1.0).epsilon(1e-14));
        area += s.weight[i];
        z2 += s.weight[i] * z * z;
        x2 += s.weight[i] * x * x;
        xy += s.weight[i] * x * y;
        x2y2 += s.weight[i] * (x * x - y * y);
    }
    CHECK(area == Approx(4.0 * cgs::pi).epsilon(1e-14));
    CHECK(z2 == Approx(4.0 * cgs::pi / 3.0).epsilon(1e-14));
    CHECK(x2 == Approx(4.0 * cgs::pi / 3.0).epsilon(1e-14));
    CHECK(std::abs(xy) < 1e-14);
    CHECK(std::abs(x2y2) < 1e-14);
    CHECK_THROWS_AS(make_sphere_nodes(0, 4), std::invalid_argument);
}

TEST_CASE("helpers: log spacing, slopes, finite differences")
{
    const std::vector<double> g = log_spaced(1e3, 1e9, 10);
    REQUIRE(g.size() == 10);
    CHECK(g.front() == 1e3);
    CHECK(g.back() == 1e9);
    CHECK(g[3] == Approx(1e5).epsilon(1e-14));
    CHECK(log_spaced(5.0, 7.0, 1).front() == 5.0);
    CHECK_THROWS_AS(log_spaced(0.0, 1.0, 3), std::invalid_argument);

    CHECK(scaling_slope([](double R) { return 3.0 / (R * R); }, g) == Approx(-2.0).epsilon(1e-13));
    CHECK(scaling_slope([](double R) { return -R; }, g) == Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(scaling_slope([](double) { return 0.0; }, g), std::invalid_argument);
    const std::vector<double> few{1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(scaling_slope([](double R) { return R; }, few), std::invalid_argument);

    auto f = [](double t) { return std::sin(3.0 * t); };
    CHECK(finite_difference(f, 0.4, 1, 1e-3) == Approx(3.0 * std::cos(1.2)).epsilon(1e-10));
    CHECK(finite_difference(f, 0.4, 2, 1e-3) == Approx(-9.0 * std::sin(1.2)).epsilon(1e-8));
    CHECK(finite_difference(f, 0.4, 3, 1e-2) == Approx(-27.0 * std::cos(1.2)).epsilon(1e-7));
    CHECK_THROWS_AS(finite_difference(f, 0.0, 4, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(finite_difference(f, 0.0, 1, 0.0), std::invalid_argument);
}

TEST_CASE("parallel_for visits every index once and rethrows")
{
    for (int threads : {1, 2, 7, 64}) {
        std::vector<int> hits(37, 0);
        parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
        for (int h : hits)
            CHECK(h == 1);
    }
    parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i) {
                                     if (i == 5)
                                         throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}

TEST_CASE("normalization adjudication")
{
    const double closed = 2.5;
    NormalizationVerdict v = adjudicate_power_normalization(closed * (1.0 + 1e-12), closed, 1e-8);
    CHECK(v.match == PowerNormalization::total_formula);
    CHECK(v.rel_err_total < 1e-11);
    v = adjudicate_power_normalization(16.0 * cgs::pi / 5.0 * closed, closed, 1e-8);
    CHECK(v.match == PowerNormalization::angular_formula);
    CHECK(v.rel_err_angular < 1e-14);
    v = adjudicate_power_normalization(2.0 * closed, closed, 1e-8);
    CHECK(v.match == PowerNormalization::neither);
}

TEST_CASE("property: sphere-by-time quadrature reproduces the closed-form power and OAM rate")
{
    Gen gen(61);
    for (int i = 0; i < 6; ++i) {
        const NslgState st = breathing_state(gen);
        CAPTURE(i);
        const FluxOracleResult r = run_flux_oracle(st);
        const double P = avg_power(st.q, st.bp);
        const NormalizationVerdict v = adjudicate_power_normalization(r.mean.power_far, P, 1e-8);
        CHECK(v.match == PowerNormalization::total_formula);
        CHECK(rel_diff(r.mean.power_far, P) < 1e-8);
        CHECK(r.interference_ratio < 1e-6);
        CHECK(r.convergence_delta < 1e-10);
        CHECK(r.radius == Approx(1e8 * st.bp.sigma_st));

        const OamOracleResult o = numeric_avg_oam_rate(st);
        CHECK(rel_diff(o.interference_z, avg_oam_rate(st.q, st.bp)) < 1e-8);
        CHECK(std::abs(o.far_z_average) < 1e-9 * o.far_z_amplitude);
        CHECK(std::abs(o.linear_z_average) < 1e-9 * o.linear_z_amplitude);
        CHECK(o.transverse_norm < 1e-9 * std::abs(o.interference_z) + 1e-9 * o.linear_z_amplitude);
        // the far OAM rate sampled by the oracle oscillates with the closed-form amplitude
        const double d_amp = st.q.degeneracy() * st.bp.sigma_st * st.bp.sigma_st * st.bp.amplitude;
        const double w = std::abs(st.bp.omega_c);
        const double far_amp = cgs::e_charge * cgs::e_charge * r.radius * w * std::pow(w, 5) * d_amp * d_amp /
                               (60.0 * std::pow(cgs::c_light, 6));
        CHECK(o.far_z_amplitude == Approx(far_amp).epsilon(1e-3));
    }
}

TEST_CASE("oracle reports a sphere outside the far zone")
{
    Gen gen(62);
    const NslgState st = breathing_state(gen);
    FluxOracleOptions opts;
    opts.radius_factor = 1.0;
    opts.interference_tol = 1e-12;
    try {
        run_flux_oracle(st, opts);
        FAIL("expected OracleError");
    } catch (const OracleError& e) {
        CHECK(e.achieved() > 1e-12);
    }
}

TEST_CASE("oracle is bit-identical across thread counts")
{
    Gen gen(63);
    const NslgState st = breathing_state(gen);
    FluxOracleOptions one;
    one.check_convergence = false;
    FluxOracleOptions many = one;
    many.threads = 5;
    const FluxOracleResult a = run_flux_oracle(st, one);
    const FluxOracleResult b = run_flux_oracle(st, many);
    CHECK(same_bits(a.mean.power_far, b.mean.power_far));
    CHECK(same_bits(a.mean.oam_int_quadratic.z, b.mean.oam_int_quadratic.z));
    CHECK(same_bits(a.mean.oam_far.z, b.mean.oam_far.z));
}

TEST_CASE("property: density moments")
{
    Gen gen(64);
    for (int i = 0; i < 10; ++i) {
        const NslgState st = gen.state();
        const double t = gen.uniform(0.0, 3.0) * st.bp.period();
        const DensityMoments m = density_moments(st, t);
        CHECK(rel_diff(m.charge, cgs::e_charge) < 1e-8);
        CHECK(rel_diff(m.mean_r_perp_sq, rho_sq_derivative(t, st.q, st.bp, 0)) < 1e-8);
    }
}

TEST_CASE("property: continuity on a grid")
{
    Gen gen(65);
    for (int i = 0; i < 3; ++i) {
        const NslgState st = breathing_state(gen);
        ContinuityOptions opts;
        opts.grid = 24;
        const ContinuityResult r = continuity_residual(st, gen.uniform(0.0, 1.0) * st.bp.period(), opts);
        CHECK(r.points == 24u * 24u * 24u);
        CHECK(r.max_rate > 0.0);
        CHECK(r.relative() < 1e-6);
    }
    CHECK_THROWS_AS(continuity_residual(breathing_state(gen), 0.0, ContinuityOptions{1, 4.0, 1e-3, 1}),
                    std::invalid_argument);
}
