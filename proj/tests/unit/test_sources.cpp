#include "breathing/sources.hpp"

#include "breathing/constants.hpp"

#include "../support/generators.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace breathing;
using breathing::testing::Gen;
using breathing::testing::rel_diff;
using doctest::Approx;

namespace {

// Composite Simpson, kept separate from the library quadrature.
double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000)
{
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
}

double richardson(const std::function<double(double)>& f, double x, double h)
{
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

NslgState breathing_state(Gen& gen)
{
    for (;;) {
        NslgState st = gen.state();
        if (!st.bp.is_landau())
            return st;
    }
}

} // namespace

TEST_CASE("Laguerre polynomials against explicit forms")
{
    Gen gen(1);
    for (int i = 0; i < 200; ++i) {
        const int a = gen.integer(0, 12);
        const double x = gen.uniform(0.0, 30.0);
        CHECK(laguerre(0, a, x) == 1.0);
        CHECK(laguerre(1, a, x) == Approx(1.0 + a - x));
        const double l2 = 0.5 * (x * x - 2.0 * (a + 2) * x + (a + 1.0) * (a + 2.0));
        CHECK(laguerre(2, a, x) == Approx(l2).scale(1.0 + std::abs(l2)));
        const double l3 = (-x * x * x + 3.0 * (a + 3) * x * x - 3.0 * (a + 2) * (a + 3) * x +
                           (a + 1.0) * (a + 2.0) * (a + 3.0)) /
                          6.0;
        CHECK(laguerre(3, a, x) == Approx(l3).scale(1.0 + std::abs(l3)));
    }
}

TEST_CASE("Laguerre orthogonality")
{
    for (int a : {0, 1, 4}) {
        for (int n = 0; n <= 3; ++n) {
            for (int m = 0; m <= 3; ++m) {
                const double v = simpson(
                    [&](double x) { return std::pow(x, a) * std::exp(-x) * laguerre(n, a, x) * laguerre(m, a, x); },
                    0.0, 80.0, 40000);
                const double expected = n == m ? std::tgamma(n + a + 1.0) / factorial(n) : 0.0;
                CHECK(v == Approx(expected).scale(std::tgamma(n + a + 1.0)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("property: transverse profile is unit normalized with mean square radius rho^2")
{
    Gen gen(8);
    for (int i = 0; i < 60; ++i) {
        const NslgState st = gen.state();
        const double t = gen.uniform(0.0, 1.0) * st.bp.period();
        const double sig = std::sqrt(sigma_sq(t, st.bp));
        const double r_max = sig * std::sqrt(80.0 + 4.0 * st.q.degeneracy());
        auto T = [&](double r) { return transverse_density(r, t, st.q, st.bp); };
        const double norm = simpson([&](double r) { return 2.0 * cgs::pi * r * T(r); }, 0.0, r_max);
        const double second = simpson([&](double r) { return 2.0 * cgs::pi * r * r * r * T(r); }, 0.0, r_max);
        CAPTURE(st.q.n);
        CAPTURE(st.q.l);
        CHECK(norm == Approx(1.0).epsilon(1e-9));
        CHECK(rel_diff(second, rho_sq_derivative(t, st.q, st.bp, 0)) < 1e-9);
        CHECK(T(r_max) >= 0.0);
        if (st.q.l != 0)
            CHECK(T(0.0) == 0.0);
    }
}

TEST_CASE("property: longitudinal packet moments")
{
    Gen gen(9);
    for (int i = 0; i < 60; ++i) {
        const LongitudinalPacket pkt = gen.packet();
        const double t = gen.uniform(0.0, 5.0) * pkt.diffraction_time();
        const double w2 = pkt.width_sq(t);
        const double w = std::sqrt(w2);
        const double zc = pkt.p0 * t / cgs::m_electron;
        auto f = [&](double z) { return longitudinal_density(z, t, pkt); };
        const double lo = zc - 12.0 * w;
        const double hi = zc + 12.0 * w;
        CHECK(simpson(f, lo, hi) == Approx(1.0).epsilon(1e-10));
        CHECK(simpson([&](double z) { return (z - zc) * f(z); }, lo, hi) == Approx(0.0).scale(w).epsilon(1e-10));
        CHECK(simpson([&](double z) { return (z - zc) * (z - zc) * f(z); }, lo, hi) ==
              Approx(0.5 * w2).epsilon(1e-9));
        // diffraction time: width grows by sqrt(2) there
        CHECK(pkt.width_sq(pkt.diffraction_time()) == Approx(2.0 * pkt.sigma_z * pkt.sigma_z).epsilon(1e-12));
    }
}

TEST_CASE("momentum normalization constant")
{
    LongitudinalPacket pkt;
    pkt.sigma_z = 1e-5;
    const double N = pkt.normalization();
    // 2 pi sqrt(pi) N^2 hbar^2 / sigma_z = 1
    CHECK(2.0 * std::pow(cgs::pi, 1.5) * N * N * cgs::hbar * cgs::hbar / pkt.sigma_z == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("current components")
{
    Gen gen(10);
    for (int i = 0; i < 200; ++i) {
        const NslgState st = gen.state();
        const double t = gen.uniform(0.0, 3.0) * st.bp.period();
        const double sig = std::sqrt(sigma_sq(t, st.bp));
        const double r = gen.uniform(0.05, 3.0) * sig * std::sqrt(st.q.degeneracy());
        const double w = std::sqrt(st.pkt.width_sq(t));
        const double zc = st.pkt.p0 * t / cgs::m_electron;
        const double z = zc + gen.uniform(-2.0, 2.0) * w;
        const SourceSample s = source_sample(r, 0.3, z, t, st);
        CHECK(rel_diff(s.rho, charge_density(r, 1.7, z, t, st)) < 1e-15);
        if (s.rho == 0.0)
            continue;
        CHECK(s.rho < 0.0);
        // radial flow follows the breathing: v_r = r sigma' / sigma
        CHECK(rel_diff(s.j.r, s.rho * r * sigma_sq_rate(t, st.bp) / (2.0 * sig * sig)) < 1e-12);
        const double vphi =
            cgs::hbar * st.q.l / (cgs::m_electron * r) - cgs::e_charge * st.bp.field_gauss * r /
                                                              (2.0 * cgs::m_electron * cgs::c_light);
        CHECK(s.j.phi == Approx(s.rho * vphi).scale(std::abs(s.rho * vphi)).epsilon(1e-11));
        const double vz = st.pkt.p0 / cgs::m_electron +
                          cgs::hbar * cgs::hbar * t * (z - zc) /
                              (cgs::m_electron * cgs::m_electron * st.pkt.sigma_z * st.pkt.sigma_z * w * w);
        CHECK(rel_diff(s.j.z, s.rho * vz) < 1e-12);
        const Cyl3 j = current_density(r, 0.3, z, t, st);
        CHECK(j.r == s.j.r);
        CHECK(j.phi == s.j.phi);
        CHECK(j.z == s.j.z);
    }
}

TEST_CASE("Landau state has only the rigid rotation and drift")
{
    NslgState st;
    const double H = 1.0e4;
    st.q = {0, 0};
    st.bp = breathing_params({landau_width(H), 0.0}, H);
    st.pkt.p0 = 0.0;
    st.pkt.sigma_z = 1e-5;
    const double r = 0.7 * st.bp.sigma_L;
    const SourceSample s = source_sample(r, 0.0, 0.0, 0.0, st);
    CHECK(s.j.r == 0.0);
    CHECK(s.j.z == 0.0);
    CHECK(rel_diff(s.j.phi, -0.5 * st.bp.omega_c * r * s.rho) < 1e-14);
    CHECK(charge_density_rate(r, 0.0, 0.0, 0.0, st) == 0.0);
}

TEST_CASE("property: analytic density rate against finite differences")
{
    Gen gen(12);
    for (int i = 0; i < 200; ++i) {
        const NslgState st = breathing_state(gen);
        const double T = st.bp.period();
        const double t = gen.uniform(0.0, 2.0) * T;
        const double sig = std::sqrt(sigma_sq(t, st.bp));
        const double r = gen.uniform(0.05, 3.0) * sig * std::sqrt(st.q.degeneracy());
        const double w = std::sqrt(st.pkt.width_sq(t));
        const double z = st.pkt.p0 * t / cgs::m_electron + gen.uniform(-2.0, 2.0) * w;
        const double h = std::min(T, w * cgs::m_electron / std::max(st.pkt.p0, 1e-30)) * 1e-4;
        const double fd = richardson([&](double tt) { return charge_density(r, 0.0, z, tt, st); }, t, h);
        const double exact = charge_density_rate(r, 0.0, z, t, st);
        // the rate carries polynomial factors in r^2 / sigma^2 from the Laguerre profile
        const double u = r * r / (sig * sig);
        const double shape = 2.0 + u + st.q.degeneracy();
        const double scale =
            shape * std::abs(charge_density(r, 0.0, z, t, st)) * (1.0 / T + st.pkt.p0 / (cgs::m_electron * w));
        CHECK(std::abs(fd - exact) < 1e-7 * scale);
    }
}

TEST_CASE("property: continuity holds pointwise")
{
    Gen gen(13);
    for (int i = 0; i < 200; ++i) {
        const NslgState st = breathing_state(gen);
        const double T = st.bp.period();
        const double t = gen.uniform(0.0, 2.0) * T;
        const double sig = std::sqrt(sigma_sq(t, st.bp));
        const double r = gen.uniform(0.05, 3.0) * sig * std::sqrt(st.q.degeneracy());
        const double w = std::sqrt(st.pkt.width_sq(t));
        const double z = st.pkt.p0 * t / cgs::m_electron + gen.uniform(-2.0, 2.0) * w;
        // div j = (1/r) d(r j_r)/dr + d j_z/dz; j_phi does not depend on phi
        const double div_r =
            richardson([&](double rr) { return rr * current_density(rr, 0.0, z, t, st).r; }, r, 1e-3 * sig) / r;
        const double div_z = richardson([&](double zz) { return current_density(r, 0.0, zz, t, st).z; }, z, 1e-3 * w);
        const double rate = charge_density_rate(r, 0.0, z, t, st);
        const double scale = std::abs(charge_density(r, 0.0, z, t, st)) * (1.0 / T + st.pkt.p0 / (cgs::m_electron * w));
        CHECK(std::abs(rate + div_r + div_z) < 1e-7 * scale);
    }
}

TEST_CASE("field reversal flips only the diamagnetic rotation")
{
    Gen gen(14);
    for (int i = 0; i < 50; ++i) {
        NslgState a = gen.state();
        NslgState b = a;
        const InitialTransverseState init{std::sqrt(a.bp.sigma0_sq), 0.0};
        a.bp = breathing_params(init, a.bp.field_gauss);
        b.bp = breathing_params(init, -a.bp.field_gauss);
        const double r = std::sqrt(a.bp.sigma0_sq);
        const SourceSample sa = source_sample(r, 0.0, 0.0, 0.0, a);
        const SourceSample sb = source_sample(r, 0.0, 0.0, 0.0, b);
        CHECK(sa.rho == sb.rho);
        const double diamagnetic = -0.5 * a.bp.omega_c * r * sa.rho;
        const double scale = std::abs(sa.j.phi) + std::abs(sb.j.phi);
        CHECK(std::abs(sa.j.phi - sb.j.phi - 2.0 * diamagnetic) < 1e-13 * scale);
    }
}
