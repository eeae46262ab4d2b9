#include "breathing/fringe.hpp"

#include "breathing/constants.hpp"

#include "../support/generators.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace breathing;
using breathing::testing::Gen;
using breathing::testing::rel_diff;
using doctest::Approx;

namespace {

constexpr double kTesla = 1.0e4;

// Adaptive Gauss-Kronrod on the defining integrals.
double oracle_C(double x)
{
    if (x == 0.0)
        return 0.0;
    auto f = [](double t) { return std::cos(0.5 * cgs::pi * t * t); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, x, 10, 1e-13);
}

double oracle_S(double x)
{
    if (x == 0.0)
        return 0.0;
    auto f = [](double t) { return std::sin(0.5 * cgs::pi * t * t); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, x, 10, 1e-13);
}

NslgState breathing_state(double sigma0_nm, double slope_over_c)
{
    NslgState st;
    st.q = {1, 5};
    st.bp = breathing_params({nm_to_cm(sigma0_nm), slope_over_c * cgs::c_light}, kTesla);
    st.pkt.sigma_z = nm_to_cm(100.0);
    st.pkt.p0 = cgs::m_electron * energy_to_velocity(2e5);
    return st;
}

} // namespace

TEST_CASE("Fresnel reference values")
{
    CHECK(fresnel_C(0.0) == 0.0);
    CHECK(fresnel_S(0.0) == 0.0);
    CHECK(fresnel_C(1.0) == Approx(0.7798934).epsilon(1e-7));
    CHECK(fresnel_S(1.0) == Approx(0.4382591).epsilon(1e-7));
    CHECK(std::abs(fresnel_C(50.0) - 0.5) < 1e-2);
    CHECK(std::abs(fresnel_C(1e4) - 0.5) < 1e-4);
    CHECK(fresnel_C(INFINITY) == 0.5);
    CHECK_THROWS_AS(fresnel_C(-1.0), std::domain_error);
    CHECK_THROWS_AS(fresnel_S(NAN), std::domain_error);
}

TEST_CASE("Fresnel integrals match adaptive quadrature on [0, 10]")
{
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double x = 0.01 * i;
        const double dc = std::abs(fresnel_C(x) - oracle_C(x));
        const double ds = std::abs(fresnel_S(x) - oracle_S(x));
        worst = std::max({worst, dc, ds});
        CAPTURE(x);
        CHECK(dc < 1e-9);
        CHECK(ds < 1e-9);
    }
    MESSAGE("max |Fresnel - oracle| on [0, 10]: " << worst);
}

TEST_CASE("Fresnel is continuous across the method switch")
{
    for (double x : {1.5, 1.4999999999, 1.5000000001}) {
        CHECK(std::abs(fresnel_C(x) - oracle_C(x)) < 1e-12);
        CHECK(std::abs(fresnel_S(x) - oracle_S(x)) < 1e-12);
    }
    CHECK(std::abs(fresnel_C(std::nextafter(1.5, 0.0)) - fresnel_C(std::nextafter(1.5, 2.0))) < 1e-13);
}

TEST_CASE("property: Fresnel derivative is the integrand")
{
    Gen gen(51);
    for (int i = 0; i < 200; ++i) {
        const double x = gen.uniform(0.05, 20.0);
        const double h = 1e-5;
        const double dC = (fresnel_C(x + h) - fresnel_C(x - h)) / (2.0 * h);
        CHECK(dC == Approx(std::cos(0.5 * cgs::pi * x * x)).scale(1.0).epsilon(1e-6 * (1.0 + x * x)));
    }
}

TEST_CASE("adiabaticity")
{
    const FringeScenario fs = FringeScenario::from_solenoid(1.0, kTesla);
    CHECK(fs.transit_time == Approx(66.7e-12).epsilon(1e-3));
    CHECK(fs.omega_c_rate == Approx(fs.omega_c / fs.transit_time));
    const AdiabaticityCheck a = adiabatic_check(fs);
    CHECK(a.ratio == Approx(1.0 / (std::abs(fs.omega_c) * fs.transit_time)));
    CHECK(a.ratio == Approx(0.0853).epsilon(1e-2));
    CHECK(a.adiabatic);

    FringeScenario still = fs;
    still.omega_c_rate = 0.0;
    CHECK(adiabatic_check(still).ratio == 0.0);
    CHECK(adiabatic_check(still).adiabatic);

    CHECK_FALSE(adiabatic_check(fs, a.ratio).adiabatic);
    CHECK(adiabatic_check(fs, std::nextafter(a.ratio, 1.0)).adiabatic);

    const FringeScenario narrow = FringeScenario::from_solenoid(0.01, kTesla);
    CHECK_FALSE(adiabatic_check(narrow).adiabatic);
}

TEST_CASE("transit bracket")
{
    Gen gen(52);
    for (int i = 0; i < 300; ++i) {
        const double x = gen.log_uniform(1e-3, 1e3);
        const int s = gen.sign();
        const double expected = 0.8 * x * x + 1.0 +
                                9.0 / 16.0 * std::sqrt(cgs::pi / x) * oracle_C(2.0 * std::sqrt(x / cgs::pi)) +
                                (s - 3.0) / 8.0 * std::cos(2.0 * x) - 0.5 * x * std::sin(2.0 * x);
        CHECK(transit_bracket(x, s) == Approx(expected).scale(1.0 + 0.8 * x * x).epsilon(1e-12));
        // not symmetric in the sign: the difference is cos(2x)/4
        CHECK(transit_bracket(x, 1) - transit_bracket(x, -1) ==
              Approx(0.25 * std::cos(2.0 * x)).scale(1.0 + 0.8 * x * x).epsilon(1e-13));
    }
    CHECK_THROWS_AS(transit_bracket(0.5e-3, 1), std::domain_error);
    CHECK_THROWS_AS(transit_bracket(0.0, 1), std::domain_error);
    CHECK_NOTHROW(transit_bracket(kMinOmegaT, 1));

    // continuous: neighbouring points differ by no more than the slope allows
    double prev = transit_bracket(kMinOmegaT, -1);
    for (double x = 1.001e-3; x < 50.0; x *= 1.001) {
        const double cur = transit_bracket(x, -1);
        CHECK(std::isfinite(cur));
        CHECK(std::abs(cur - prev) < 0.01 * (std::abs(prev) + 1.0));
        prev = cur;
    }
}

TEST_CASE("transit observables")
{
    const FringeScenario fs = FringeScenario::from_solenoid(1.0, kTesla);
    const NslgState st = breathing_state(1000.0, -3.1e-4);
    const double R = 100.0;
    const TransitObservables o = transit_observables(fs, st.q, st.bp, st.pkt, R);
    CHECK(o.omega_T == Approx(std::abs(fs.omega_c) * fs.transit_time));
    CHECK(o.bracket == transit_bracket(o.omega_T, st.bp.s_sign));
    CHECK(o.fresnel_value == fresnel_C(o.fresnel_argument));
    CHECK(o.observation_radius == R);
    CHECK(o.power > 0.0);

    // the bracket appears once in the power and once in the second OAM term
    const double g = st.q.degeneracy();
    const double w = fs.omega_c;
    const double T = fs.transit_time;
    const double e2 = cgs::e_charge * cgs::e_charge;
    const double c = cgs::c_light;
    const double power_prefactor = g * g * w * w * e2 / (12.0 * T * T * std::pow(c, 5)) * st.bp.excess;
    CHECK(rel_diff(o.power / power_prefactor, o.bracket) < 1e-14);

    NslgState still = st;
    still.pkt.p0 = 0.0;
    const TransitObservables z = transit_observables(fs, still.q, still.bp, still.pkt, R);
    CHECK(z.dLz_p0 == 0.0);
    CHECK(o.dLz_p0 != 0.0);
    CHECK(z.power == o.power);
    CHECK(z.dLz_int == o.dLz_int);
    CHECK(z.dLz_rad == o.dLz_rad);

    NslgState other_width = st;
    other_width.pkt.sigma_z *= 3.0;
    const TransitObservables v = transit_observables(fs, other_width.q, other_width.bp, other_width.pkt, R);
    const double second_term = w * e2 / (4.0 * c * c * c) * g * g * w * w / (15.0 * T * T * c * c) * st.bp.excess * o.bracket;
    // the packet-width term sits only in the first OAM term
    auto packet_term = [&](double sz) {
        return cgs::hbar * cgs::hbar / (5.0 * sz * sz * cgs::m_electron * cgs::m_electron * c * c) - 2.0;
    };
    CHECK(rel_diff((o.dLz_int - second_term) / (v.dLz_int - second_term),
                   packet_term(st.pkt.sigma_z) / packet_term(other_width.pkt.sigma_z)) < 1e-12);
    CHECK(o.dLz_int != v.dLz_int);
}

TEST_CASE("radiative transit term is linear in R over two decades")
{
    const FringeScenario fs = FringeScenario::from_solenoid(1.0, kTesla);
    const NslgState st = breathing_state(5000.0, -3.1e-4);
    const double base = transit_observables(fs, st.q, st.bp, st.pkt, 1.0).dLz_rad;
    REQUIRE(base != 0.0);
    for (double R = 1.0; R <= 100.0; R *= 1.2) {
        const double v = transit_observables(fs, st.q, st.bp, st.pkt, R).dLz_rad;
        CHECK(rel_diff(v, base * R) < 1e-14);
    }
}

TEST_CASE("property: every transit observable vanishes at the Landau point")
{
    Gen gen(53);
    for (int i = 0; i < 100; ++i) {
        const double H = gen.field_gauss();
        const FringeScenario fs = FringeScenario::from_solenoid(gen.log_uniform(0.1, 10.0), H);
        NslgState st;
        st.q = gen.quantum_numbers();
        st.bp = breathing_params({landau_width(H), 0.0}, H);
        st.pkt = gen.packet();
        const TransitObservables o = transit_observables(fs, st.q, st.bp, st.pkt, 100.0);
        CHECK(o.power == 0.0);
        CHECK(o.dLz_int == 0.0);
        CHECK(o.dLz_p0 == 0.0);
        CHECK(o.dLz_rad == 0.0);
    }
    // and shrink smoothly on approach
    const FringeScenario fs = FringeScenario::from_solenoid(1.0, kTesla);
    const double sL = landau_width(kTesla);
    double prev = INFINITY;
    for (double eps = 1e-1; eps > 1e-7; eps *= 0.1) {
        NslgState st = breathing_state(cm_to_nm(sL * (1.0 + eps)), 0.0);
        const TransitObservables o = transit_observables(fs, st.q, st.bp, st.pkt, 100.0);
        CHECK(std::abs(o.power) < prev);
        prev = std::abs(o.power);
    }
}

TEST_CASE("degenerate transit input is rejected")
{
    const NslgState st = breathing_state(1000.0, 0.0);
    FringeScenario fs = FringeScenario::from_solenoid(1.0, kTesla);
    fs.transit_time = 0.0;
    CHECK_THROWS_AS(transit_observables(fs, st.q, st.bp, st.pkt, 1.0), std::domain_error);
    FringeScenario zero = FringeScenario::from_solenoid(1.0, 0.0);
    CHECK_THROWS_AS(transit_observables(zero, st.q, st.bp, st.pkt, 1.0), std::domain_error);
}
