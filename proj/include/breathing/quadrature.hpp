#pragma once

// Numerical cross-checks of the closed forms: sphere-by-time quadrature of
// the Poynting flux, source continuity on a grid, density moments, and
// scaling-slope and finite-difference helpers.

#include "breathing/kernels/sphere_flux.hpp"
#include "breathing/sources.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace breathing {

struct GaussLegendreRule {
    std::vector<double> nodes;   ///< on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, n >= 1.
GaussLegendreRule gauss_legendre(int n);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
double integrate(const std::function<double(double)>& f, double a, double b, int order = 32, int panels = 1);

/// Tensor-product nodes: Gauss-Legendre in cos(theta), uniform midpoints in phi.
kernels::SphereNodes make_sphere_nodes(int n_theta, int n_phi);

/// Raised when a numerical check misses its tolerance. Carries what was achieved.
class OracleError : public std::runtime_error {
public:
    OracleError(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

struct FluxOracleOptions {
    int n_theta = 64;
    int n_phi = 8;
    int n_samples = 512;        ///< time samples per period
    int periods = 1;
    double radius_factor = 1e8; ///< sphere radius in units of sigma_st
    double convergence_tol = 1e-10;
    bool check_convergence = true;
    /// Bound on |<P_int>| / <P_far>; guards that the sphere lies in the far zone.
    double interference_tol = 1e-6;
    int threads = 1;
};

struct FluxOracleResult {
    kernels::FluxMoments mean;          ///< period averages
    double far_oam_z_amplitude = 0.0;   ///< max over samples of |far OAM z rate|
    double linear_oam_z_amplitude = 0.0; ///< same for the linear interference part
    double radius = 0.0;
    double interference_ratio = 0.0;    ///< |<P_int>| / <P_far>
    double convergence_delta = 0.0;     ///< relative change under doubling of every node count
};

/// Sphere-by-time quadrature at one radius. Throws OracleError when the
/// interference bound or the convergence check fails.
FluxOracleResult run_flux_oracle(const NslgState& state, const FluxOracleOptions& opts = {});

/// <P> in erg/s from the far Poynting flux.
double numeric_avg_power(const NslgState& state, const FluxOracleOptions& opts = {});

struct OamOracleResult {
    /// <dL_z/dt> from the interference flux, erg. This is the bilinear part;
    /// the linear part averages to zero and is reported separately.
    double interference_z = 0.0;
    double linear_z_average = 0.0;
    double linear_z_amplitude = 0.0;
    double far_z_average = 0.0;    ///< averages to zero
    double far_z_amplitude = 0.0;
    double transverse_norm = 0.0;  ///< |<dL_x/dt>, <dL_y/dt>| of the interference flux
};

OamOracleResult numeric_avg_oam_rate(const NslgState& state, const FluxOracleOptions& opts = {});

enum class PowerNormalization { total_formula, angular_formula, neither };

struct NormalizationVerdict {
    PowerNormalization match = PowerNormalization::neither;
    double rel_err_total = 0.0;   ///< against the closed-form total power
    double rel_err_angular = 0.0; ///< against the solid-angle integral of the printed angular formula
};

/// Which of the two printed normalizations a numerically integrated power agrees with.
NormalizationVerdict adjudicate_power_normalization(double numeric, double closed_form_total, double tol);

struct ContinuityOptions {
    int grid = 64;               ///< points per axis
    double extent = 4.0;         ///< half-width in units of rms radius / longitudinal width
    double step_fraction = 1e-3; ///< finite-difference step relative to sigma(t) or w(t)
    int threads = 1;
};

struct ContinuityResult {
    double max_residual = 0.0; ///< max |d rho/dt + div j|
    double max_rate = 0.0;     ///< max |d rho/dt|
    std::size_t points = 0;

    double relative() const { return max_rate > 0.0 ? max_residual / max_rate : max_residual; }
};

/// Continuity on a Cartesian grid around the packet at time t; div j by
/// Richardson-extrapolated central differences.
ContinuityResult continuity_residual(const NslgState& state, double t, const ContinuityOptions& opts = {});

struct DensityMoments {
    double charge = 0.0;        ///< int rho d^3r, statC
    double mean_r_perp_sq = 0.0; ///< int r_perp^2 rho / int rho, cm^2
};

DensityMoments density_moments(const NslgState& state, double t);

/// Least-squares slope of log|f| against log R. Needs >= 5 points; throws
/// std::invalid_argument if f vanishes anywhere on the grid.
double scaling_slope(const std::function<double(double)>& f, std::span<const double> R_grid);

std::vector<double> log_spaced(double lo, double hi, int n);

/// Central difference of order 1..3 with one Richardson step.
double finite_difference(const std::function<double(double)>& f, double t, int order, double step);

/// Runs body(i) for i in [0, n) on up to `threads` threads. Deterministic as
/// long as body writes only to slot i.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

} // namespace breathing
