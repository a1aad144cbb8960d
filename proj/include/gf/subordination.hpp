#ifndef GF_SUBORDINATION_HPP
#define GF_SUBORDINATION_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "gf/kernel.hpp"
#include "gf/laplace_inversion.hpp"
#include "gf/report.hpp"

namespace gf {

// Subordination density psi(t, tau): the kernel of the representation
//   u(t, x) = int_0^inf psi(t, tau) (e^{tau Laplacian} u0)(x) dtau,
// obtained by inverting  khat(s) exp(-tau s khat(s))  in s at fixed tau.
// It is a probability density in tau: psi >= 0 and int_0^inf psi dtau = 1,
// with psi(t, 0+) = k(t). Reconstruction identity:
//   int_0^inf psi(t, tau) e^{-lambda tau} dtau = Y(t, lambda).

double psi(const Kernel& kernel, double t, double tau);
InversionResult psi_result(const Kernel& kernel, double t, double tau);

// E[tau] at time t: inversion of 1 / (s^2 khat(s)). Equals
// t^a / Gamma(1+a) for the single power law.
double mean_subordinator(const Kernel& kernel, double t);

// psi(t, .) tabulated on {0} followed by a geometric tau-grid whose upper end
// is extended until the tail is negligible. cell_mass holds trapezoid masses
// of the n_tau cells; total_mass should be 1 up to quadrature error.
struct SubordinationDensity {
    Kernel kernel;
    double t;
    std::vector<double> tau;        // nodes, tau[0] = 0, increasing
    std::vector<double> psi;        // psi(t, tau_i), clamped at 0
    std::vector<double> cell_mass;  // size tau.size() - 1
    double total_mass = 0.0;
    double mean_tau = 0.0;          // from the transform route, not the table
    double clamped_mass = 0.0;      // negative excursions removed by clamping
};

SubordinationDensity build_density(const Kernel& kernel, double t,
                                   int n_tau = 600);

// int psi e^{-lambda tau} dtau from the table.
double reconstruct_relax(const SubordinationDensity& density, double lambda);

// Normalization, nonnegativity, and reconstruction against the contour route
// at several lambda values.
VerificationReport check_subordination(const Kernel& kernel, double t,
                                       const std::vector<double>& lambdas,
                                       int n_tau = 600);

// n samples of the subordinated diffusion at time t started at the origin:
// tau from the tabulated density by inverse CDF, then a centered Gaussian
// with covariance 2*tau*I. Deterministic for a fixed seed.
std::vector<std::array<double, 3>> sample_positions(
    const SubordinationDensity& density, int dim, int n, std::uint64_t seed);

// Histogram of the first coordinate of sampled positions against
// bin-integrated probabilities from the relaxation route,
//   P(a < X < b) = (1/pi) int_0^inf Y(t, xi^2) (sin(xi b) - sin(xi a))/xi dxi.
// Bands are 3 sigma per bin; skipped below 1000 samples.
VerificationReport compare_sampler_to_solver(const Kernel& kernel, double t,
                                             int n_samples, std::uint64_t seed,
                                             int bins = 64);

}  // namespace gf

#endif
