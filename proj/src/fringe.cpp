#include "breathing/fringe.hpp"

#include "breathing/constants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>

namespace breathing {

namespace {

constexpr double kEps = 1.0e-16;
constexpr int kMaxIter = 200;
// Below this the power series converges without cancellation; above it the
// continued fraction for the complementary error function converges fast.
constexpr double kSeriesLimit = 1.5;

std::pair<double, double> fresnel_series(double x)
{
    const double half_pi = 0.5 * cgs::pi;
    const double z = half_pi * x * x;
    double sum_c = x;
    double sum_s = 0.0;
    double term = x; // x (pi x^2 / 2)^k / k!
    bool odd = false;
    int sign = 1;
    for (int k = 1; k < kMaxIter; ++k) {
        term *= z / k;
        const double contribution = term / (2 * k + 1);
        if (odd) {
            sign = -sign;
            sum_c += sign * contribution;
        } else {
            sum_s += sign * contribution;
        }
        odd = !odd;
        if (contribution < kEps * std::max(std::abs(sum_c), std::abs(sum_s)))
            break;
    }
    return {sum_c, sum_s};
}

// C + iS = (1+i)/2 [1 - e^{i pi x^2/2} (1 - i) x h], with h the continued
// fraction for the scaled complementary error function, evaluated by the
// modified Lentz method.
std::pair<double, double> fresnel_continued_fraction(double x)
{
    using cd = std::complex<double>;
    const double pix2 = cgs::pi * x * x;
    const double tiny = std::numeric_limits<double>::min() / kEps;

    cd b{1.0, -pix2};
    cd c = 1.0 / tiny;
    cd d = 1.0 / b;
    cd h = d;
    int n = -1;
    for (int k = 2; k <= kMaxIter; ++k) {
        n += 2;
        const double a = -static_cast<double>(n) * (n + 1);
        b += 4.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cd del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps)
            break;
    }
    h *= cd{x, -x};
    const cd cs = cd{0.5, 0.5} * (1.0 - std::polar(1.0, 0.5 * pix2) * h);
    return {cs.real(), cs.imag()};
}

std::pair<double, double> fresnel(double x)
{
    if (!(x >= 0.0))
        throw std::domain_error("Fresnel integrals are evaluated for x >= 0");
    if (x == 0.0)
        return {0.0, 0.0};
    if (std::isinf(x))
        return {0.5, 0.5};
    return x <= kSeriesLimit ? fresnel_series(x) : fresnel_continued_fraction(x);
}

} // namespace

double fresnel_C(double x) { return fresnel(x).first; }
double fresnel_S(double x) { return fresnel(x).second; }

FringeScenario FringeScenario::from_solenoid(double diameter_cm, double field_gauss)
{
    FringeScenario fs;
    fs.diameter_cm = diameter_cm;
    fs.transit_time = 2.0 * diameter_cm / cgs::c_light;
    fs.omega_c = cyclotron_frequency(field_gauss);
    fs.omega_c_rate = fs.omega_c / fs.transit_time;
    return fs;
}

AdiabaticityCheck adiabatic_check(const FringeScenario& fs, double threshold)
{
    AdiabaticityCheck out;
    if (fs.omega_c_rate == 0.0)
        out.ratio = 0.0;
    else if (fs.omega_c == 0.0)
        out.ratio = std::numeric_limits<double>::infinity();
    else
        out.ratio = std::abs(fs.omega_c_rate) / (fs.omega_c * fs.omega_c);
    out.adiabatic = out.ratio < threshold;
    return out;
}

double transit_bracket(double x, int s_sign)
{
    if (!(x >= kMinOmegaT))
        throw std::domain_error("|w_c| T below the evaluation floor of the transit formulas");
    const double fres = fresnel_C(2.0 * std::sqrt(x / cgs::pi));
    return 0.8 * x * x + 1.0 + 9.0 / 16.0 * std::sqrt(cgs::pi / x) * fres + (s_sign - 3.0) / 8.0 * std::cos(2.0 * x) -
           0.5 * x * std::sin(2.0 * x);
}

TransitObservables transit_observables(const FringeScenario& fs, const PacketQuantumNumbers& q,
                                       const BreathingParams& bp, const LongitudinalPacket& pkt, double R)
{
    const double T = fs.transit_time;
    const double w = fs.omega_c;
    if (!(T > 0.0) || w == 0.0)
        throw std::domain_error("transit formulas need w_c T > 0");

    constexpr double c = cgs::c_light;
    constexpr double m = cgs::m_electron;
    const double e2 = cgs::e_charge * cgs::e_charge;
    const double g = q.degeneracy();
    const int s = bp.s_sign;
    const double excess = bp.excess;
    const double root_excess = std::sqrt(excess);

    TransitObservables out;
    out.observation_radius = R;
    out.omega_T = std::abs(w) * T;
    const double x = out.omega_T;
    out.bracket = transit_bracket(x, s);
    out.fresnel_argument = 2.0 * std::sqrt(x / cgs::pi);
    out.fresnel_value = fresnel_C(out.fresnel_argument);

    const double c3 = c * c * c;
    const double c4 = c3 * c;
    const double c5 = c4 * c;
    const double c6 = c5 * c;

    out.power = g * g * w * w * e2 / (12.0 * T * T * c5) * excess * out.bracket;

    const double packet_term = cgs::hbar * cgs::hbar / (5.0 * pkt.sigma_z * pkt.sigma_z * m * m * c * c) - 2.0;
    out.dLz_int = w * e2 / (4.0 * c3) *
                  (g * 2.0 * s * w / (3.0 * T) * root_excess * packet_term * std::cos(x) +
                   g * g * w * w / (15.0 * T * T * c * c) * excess * out.bracket);

    out.dLz_p0 = g * s * cgs::pi * w * w * e2 * pkt.p0 * pkt.p0 / (64.0 * T * m * m * c4) * root_excess * std::cos(x);

    const double sx = std::sin(x);
    out.dLz_rad = g * g * 5.0 * cgs::pi * w * w * w * e2 * R / (256.0 * T * T * T * c6) * excess *
                  (x * std::sin(2.0 * x) + (1.0 - 2.0 * x * x) * sx * sx);
    return out;
}

} // namespace breathing
