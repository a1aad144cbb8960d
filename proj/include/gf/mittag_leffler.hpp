#ifndef GF_MITTAG_LEFFLER_HPP
#define GF_MITTAG_LEFFLER_HPP

namespace gf {

// Two-parameter Mittag-Leffler function E_{a,b}(z) = sum_j z^j / Gamma(a j + b)
// for real z, a in (0,1], b > 0. Series evaluation where it is stable, an
// integral representation on the negative axis where the alternating series
// cancels. Target relative accuracy 1e-10 for |z| <= 50.
double ml(double alpha, double beta, double z);

// E_alpha(-lambda t^alpha): relaxation of the single power-law kernel.
// Equals exp(-lambda t) at alpha = 1 and 1 at t = 0 or lambda = 0.
double ml_relaxation(double alpha, double lambda, double t);

namespace detail {
// Exposed for the branch-overlap test only.
double ml_series(double alpha, double beta, double z, bool* converged,
                 double* cancellation);
double ml_integral(double alpha, double beta, double z);
}  // namespace detail

}  // namespace gf

#endif
