#include "breathing/quadrature.hpp"

#include "breathing/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <utility>

namespace breathing {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x)
{
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

} // namespace

GaussLegendreRule gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(cgs::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double dp = legendre(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1)
        rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b, int order, int panels)
{
    if (panels < 1)
        throw std::invalid_argument("integrate needs at least one panel");
    const GaussLegendreRule rule = gauss_legendre(order);
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            sum += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
        total += 0.5 * width * sum;
    }
    return total;
}

kernels::SphereNodes make_sphere_nodes(int n_theta, int n_phi)
{
    if (n_theta < 1 || n_phi < 1)
        throw std::invalid_argument("sphere quadrature needs positive node counts");
    const GaussLegendreRule rule = gauss_legendre(n_theta);
    kernels::SphereNodes nodes;
    const auto total = static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi);
    for (auto* v : {&nodes.theta, &nodes.phi, &nodes.sin_theta, &nodes.cos_theta, &nodes.sin_phi, &nodes.cos_phi,
                    &nodes.weight})
        v->reserve(total);
    const double dphi = 2.0 * cgs::pi / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        const double u = rule.nodes[static_cast<std::size_t>(i)];
        const double s = std::sqrt((1.0 - u) * (1.0 + u));
        const double theta = std::acos(u);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = (j + 0.5) * dphi;
            nodes.theta.push_back(theta);
            nodes.phi.push_back(phi);
            nodes.sin_theta.push_back(s);
            nodes.cos_theta.push_back(u);
            nodes.sin_phi.push_back(std::sin(phi));
            nodes.cos_phi.push_back(std::cos(phi));
            nodes.weight.push_back(rule.weights[static_cast<std::size_t>(i)] * dphi);
        }
    }
    return nodes;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body)
{
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers)
                    body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

namespace {

kernels::FluxMoments pairwise_sum(const std::vector<kernels::FluxMoments>& v, std::size_t lo, std::size_t hi)
{
    if (hi - lo == 1)
        return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    kernels::FluxMoments a = pairwise_sum(v, lo, mid);
    a += pairwise_sum(v, mid, hi);
    return a;
}

double relative_change(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

FluxOracleResult flux_pass(const NslgState& state, const FluxOracleOptions& opts)
{
    if (opts.n_samples < 1 || opts.periods < 1)
        throw std::invalid_argument("time average needs at least one sample and one period");
    if (!(state.bp.sigma_st > 0.0))
        throw std::invalid_argument("flux oracle needs sigma_st > 0");

    FluxOracleResult out;
    out.radius = opts.radius_factor * state.bp.sigma_st;
    const kernels::SphereNodes nodes = make_sphere_nodes(opts.n_theta, opts.n_phi);
    const double dt = state.bp.period() / opts.n_samples;
    const auto n = static_cast<std::size_t>(opts.n_samples) * static_cast<std::size_t>(opts.periods);

    std::vector<kernels::FluxMoments> samples(n);
    parallel_for(n, opts.threads, [&](std::size_t k) {
        const RhoSqDerivatives d = rho_sq_derivatives(static_cast<double>(k) * dt, state.q, state.bp);
        samples[k] = kernels::sphere_flux_moments(nodes, out.radius, d, state);
    });

    out.mean = pairwise_sum(samples, 0, n);
    out.mean *= 1.0 / static_cast<double>(n);
    for (const auto& s : samples) {
        out.far_oam_z_amplitude = std::max(out.far_oam_z_amplitude, std::abs(s.oam_far.z));
        out.linear_oam_z_amplitude = std::max(out.linear_oam_z_amplitude, std::abs(s.oam_int_linear.z));
    }
    out.interference_ratio = out.mean.power_far > 0.0 ? std::abs(out.mean.power_int()) / out.mean.power_far : 0.0;
    return out;
}

} // namespace

FluxOracleResult run_flux_oracle(const NslgState& state, const FluxOracleOptions& opts)
{
    FluxOracleResult out = flux_pass(state, opts);
    if (out.interference_ratio > opts.interference_tol)
        throw OracleError("interference flux is not negligible on the integration sphere", out.interference_ratio);

    if (opts.check_convergence) {
        FluxOracleOptions fine = opts;
        fine.n_theta *= 2;
        fine.n_phi *= 2;
        fine.n_samples *= 2;
        const FluxOracleResult refined = flux_pass(state, fine);
        out.convergence_delta = std::max(relative_change(out.mean.power_far, refined.mean.power_far),
                                         relative_change(out.mean.oam_int_quadratic.z, refined.mean.oam_int_quadratic.z));
        if (out.convergence_delta > opts.convergence_tol)
            throw OracleError("sphere quadrature did not converge", out.convergence_delta);
    }
    return out;
}

double numeric_avg_power(const NslgState& state, const FluxOracleOptions& opts)
{
    return run_flux_oracle(state, opts).mean.power_far;
}

OamOracleResult numeric_avg_oam_rate(const NslgState& state, const FluxOracleOptions& opts)
{
    const FluxOracleResult r = run_flux_oracle(state, opts);
    OamOracleResult out;
    const Cart3 total = r.mean.oam_int();
    out.interference_z = r.mean.oam_int_quadratic.z;
    out.linear_z_average = r.mean.oam_int_linear.z;
    out.linear_z_amplitude = r.linear_oam_z_amplitude;
    out.far_z_average = r.mean.oam_far.z;
    out.far_z_amplitude = r.far_oam_z_amplitude;
    out.transverse_norm = std::hypot(total.x, total.y);
    return out;
}

NormalizationVerdict adjudicate_power_normalization(double numeric, double closed_form_total, double tol)
{
    NormalizationVerdict v;
    const double angular = 16.0 * cgs::pi / 5.0 * closed_form_total;
    v.rel_err_total = relative_change(numeric, closed_form_total);
    v.rel_err_angular = relative_change(numeric, angular);
    if (v.rel_err_total <= tol && v.rel_err_total <= v.rel_err_angular)
        v.match = PowerNormalization::total_formula;
    else if (v.rel_err_angular <= tol)
        v.match = PowerNormalization::angular_formula;
    return v;
}

ContinuityResult continuity_residual(const NslgState& state, double t, const ContinuityOptions& opts)
{
    if (opts.grid < 2)
        throw std::invalid_argument("continuity grid needs at least two points per axis");

    const double sigma = std::sqrt(sigma_sq(t, state.bp));
    const double w = std::sqrt(state.pkt.width_sq(t));
    const double v = state.pkt.p0 / cgs::m_electron;
    const double z_c = v * t;
    const double Lxy = opts.extent * std::sqrt(static_cast<double>(state.q.degeneracy())) * sigma;
    const double Lz = opts.extent * w;
    const double hx = opts.step_fraction * sigma;
    const double hz = opts.step_fraction * w;

    // Time step resolves breathing, spreading and drift alike.
    double t_scale = state.pkt.diffraction_time();
    if (!state.bp.is_landau())
        t_scale = std::min(t_scale, state.bp.period());
    if (v != 0.0)
        t_scale = std::min(t_scale, w / std::abs(v));
    const double ht = opts.step_fraction * t_scale;

    auto richardson = [](const std::function<double(double)>& g, double x, double h) {
        const double coarse = (g(x + h) - g(x - h)) / (2.0 * h);
        const double fine = (g(x + 0.5 * h) - g(x - 0.5 * h)) / h;
        return (4.0 * fine - coarse) / 3.0;
    };
    auto cart_current = [&](double x, double y, double z) {
        const double r = std::hypot(x, y);
        const double phi = std::atan2(y, x);
        return to_cartesian(current_density(r, phi, z, t, state), phi);
    };

    const auto g = static_cast<std::size_t>(opts.grid);
    std::vector<double> residual(g * g * g);
    std::vector<double> rate(g * g * g);
    auto coord = [](std::size_t i, std::size_t n, double L) { return -L + (static_cast<double>(i) + 0.5) * 2.0 * L / n; };

    parallel_for(g * g, opts.threads, [&](std::size_t ij) {
        const double x = coord(ij / g, g, Lxy);
        const double y = coord(ij % g, g, Lxy);
        const double r = std::hypot(x, y);
        const double phi = std::atan2(y, x);
        for (std::size_t k = 0; k < g; ++k) {
            const double z = z_c + coord(k, g, Lz);
            const double drho = richardson([&](double tt) { return charge_density(r, phi, z, tt, state); }, t, ht);
            const double div = richardson([&](double xx) { return cart_current(xx, y, z).x; }, x, hx) +
                               richardson([&](double yy) { return cart_current(x, yy, z).y; }, y, hx) +
                               richardson([&](double zz) { return cart_current(x, y, zz).z; }, z, hz);
            residual[ij * g + k] = std::abs(drho + div);
            rate[ij * g + k] = std::abs(drho);
        }
    });

    ContinuityResult out;
    out.points = residual.size();
    out.max_residual = *std::max_element(residual.begin(), residual.end());
    out.max_rate = *std::max_element(rate.begin(), rate.end());
    return out;
}

DensityMoments density_moments(const NslgState& state, double t)
{
    const double sigma = std::sqrt(sigma_sq(t, state.bp));
    const double u_max = 80.0 + 4.0 * (2.0 * state.q.n + std::abs(state.q.l));
    const double r_max = sigma * std::sqrt(u_max);
    auto radial = [&](double power) {
        return integrate(
            [&](double r) {
                return 2.0 * cgs::pi * std::pow(r, power) * transverse_density(r, t, state.q, state.bp);
            },
            0.0, r_max, 32, 32);
    };
    const double w = std::sqrt(state.pkt.width_sq(t));
    const double z_c = state.pkt.p0 / cgs::m_electron * t;
    const double longitudinal = integrate([&](double z) { return longitudinal_density(z, t, state.pkt); },
                                          z_c - 12.0 * w, z_c + 12.0 * w, 32, 16);
    const double norm = radial(1.0);

    DensityMoments m;
    m.charge = cgs::e_charge * norm * longitudinal;
    m.mean_r_perp_sq = radial(3.0) / norm;
    return m;
}

double scaling_slope(const std::function<double(double)>& f, std::span<const double> R_grid)
{
    if (R_grid.size() < 5)
        throw std::invalid_argument("scaling slope needs at least five radii");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (double R : R_grid) {
        const double y = std::abs(f(R));
        if (!(y > 0.0) || !std::isfinite(y))
            throw std::invalid_argument("scaling slope of a function that vanishes on the grid");
        const double lx = std::log(R);
        const double ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(R_grid.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> log_spaced(double lo, double hi, int n)
{
    if (n < 1 || !(lo > 0.0) || !(hi > 0.0))
        throw std::invalid_argument("log spacing needs n >= 1 and positive bounds");
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

double finite_difference(const std::function<double(double)>& f, double t, int order, double step)
{
    if (!(step > 0.0))
        throw std::invalid_argument("finite difference step must be positive");
    auto central = [&](double h) {
        switch (order) {
        case 1: return (f(t + h) - f(t - h)) / (2.0 * h);
        case 2: return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
        case 3: return (f(t + 2.0 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2.0 * h)) / (2.0 * h * h * h);
        default: throw std::invalid_argument("finite difference order must be 1, 2 or 3");
        }
    };
    return (4.0 * central(0.5 * step) - central(step)) / 3.0;
}

} // namespace breathing
