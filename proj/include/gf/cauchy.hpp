#ifndef GF_CAUCHY_HPP
#define GF_CAUCHY_HPP

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "gf/kernel.hpp"
#include "gf/report.hpp"

namespace gf {

// Periodic box [-L,L)^n approximating R^n. Frequencies are xi = (pi/L) m with
// integer m in [-M/2, M/2). The transform pair carries the (2pi)^(-n/2)
// prefactor on both sides, so discrete L2 norms on either side approximate
// the continuum ones and Parseval holds to rounding.
struct BoxGrid {
    int dim;   // 1, 2 or 3
    double L;  // half-length
    int M;     // points per dimension, even, >= 8

    BoxGrid(int dim_, double L_, int M_);
    std::size_t total() const;
    double spacing() const { return 2.0 * L / M; }
    double dxi() const;
    // coordinate of index i along one axis
    double x(int i) const { return -L + i * spacing(); }
    // signed frequency integer of FFT index k along one axis
    int freq_int(int k) const { return k <= M / 2 ? k : k - M; }
    // |xi|^2 for a flat mode index
    double lambda_of(std::size_t flat) const;
};

struct GridField {
    enum class Side { Space, Frequency };

    BoxGrid grid;
    Side side;
    std::vector<double> space;                  // valid when side == Space
    std::vector<std::complex<double>> freq;     // valid when side == Frequency

    static GridField zero(const BoxGrid& grid);
    static GridField gaussian(const BoxGrid& grid, double sigma);
    // cos(xi0 . x) with xi0 = (pi/L) * k; an exact eigenfunction of the solver
    static GridField mode(const BoxGrid& grid, const std::array<int, 3>& k);
};

GridField to_frequency(const GridField& f);
GridField to_space(const GridField& f);

struct FieldNorms {
    double l2 = 0.0;
    double h2 = 0.0;
    double sup = 0.0;
    double dk_l2 = 0.0;  // L2 norm of D_(k) u at this time
};

struct SolutionSnapshot {
    double time;
    GridField field;  // space side
    FieldNorms norms;
    double propagated_error = 0.0;  // inversion error pushed through Parseval
};

// ---- homogeneous problem -------------------------------------------------

std::vector<SolutionSnapshot> solve_homogeneous(const Kernel& kernel,
                                                const GridField& u0,
                                                const std::vector<double>& times);

VerificationReport verify_homogeneous_estimates(const Kernel& kernel,
                                                const GridField& u0,
                                                const std::vector<double>& times);

// ---- source problem (zero initial data) ----------------------------------

// h(t, x); must stay valid for the duration of the solve.
using SourceProvider = std::function<GridField(double t)>;

// g(x) * profile(t)
SourceProvider separable_source(GridField spatial,
                                std::function<double(double)> profile);

std::vector<SolutionSnapshot> solve_with_source(const Kernel& kernel,
                                                const SourceProvider& h,
                                                const BoxGrid& grid,
                                                const std::vector<double>& times,
                                                int quad_steps = 256);

VerificationReport verify_source_estimates(const Kernel& kernel,
                                           const SourceProvider& h,
                                           const BoxGrid& grid,
                                           const std::vector<double>& times,
                                           int quad_steps = 256);

// ---- long-time decay ------------------------------------------------------

struct DecayFit {
    double slope;      // least-squares slope of log ||u(t)||_L2 vs log t
    double expected;   // -n*alpha/4
    std::vector<double> times;
    std::vector<double> l2_norms;
};

DecayFit decay_exponent_fit(const Kernel& kernel, const GridField& u0,
                            double t_min, double t_max, int t_points);

// ---- helpers --------------------------------------------------------------

FieldNorms field_norms(const GridField& space_side);

// Truncation floor of a discrete field: spectral tail mass in the top
// frequency shell plus a roundoff allowance. Negative excursions of a
// nonnegative solution are benign below this level.
double spectral_epsilon(const GridField& f);

double min_value(const GridField& space_side);

}  // namespace gf

#endif
