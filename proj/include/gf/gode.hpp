#ifndef GF_GODE_HPP
#define GF_GODE_HPP

#include <functional>
#include <vector>

#include "gf/kernel.hpp"

namespace gf {

struct TimeGrid {
    double h;
    int steps;  // nodes are t_n = n*h, n = 0..steps

    TimeGrid(double h_, int steps_);
    double node(int n) const { return n * h; }
    int size() const { return steps + 1; }
};

// Product-integration weights for D_(k) with piecewise-linear reconstruction:
//   D_(k) v(t_n) ~= sum_{j=1..n} c_{n-j} (v_j - v_{j-1}),
//   c_m = ( K1(t_{m+1}) - K1(t_m) ) / h,   K1(t) = int_0^t k.
// The kernel is integrated exactly over each cell, so the singularity at 0
// never gets point-sampled; the rule annihilates constants and is exact for
// linear v. For the power law this reproduces the classical L1 scheme.
class ConvolutionWeights {
  public:
    ConvolutionWeights(const Kernel& kernel, const TimeGrid& grid);

    const TimeGrid& grid() const { return grid_; }
    double cell_average(int m) const { return c_[m]; }

    // Row n of the equivalent (v_j - v_0) form, indices 0..n. Provided for
    // inspection; the solvers use the increment form directly.
    std::vector<double> row(int n) const;

  private:
    TimeGrid grid_;
    std::vector<double> c_;
};

// Discrete D_(k) applied to samples at all nodes; returns values at nodes 1..N.
std::vector<double> apply_dk(const Kernel& kernel, const TimeGrid& grid,
                             const std::vector<double>& samples);

// Implicit stepping for D_(k) w + lambda w = 0, w(0) = w0.
std::vector<double> solve_relax_ode(const Kernel& kernel, double lambda,
                                    double w0, const TimeGrid& grid);

// Quadrature of the representation w(t) = -(1/lambda) int_0^t v'(t-s) f(s) ds
// with v = Y(.,lambda) from the contour-inversion route. The cell increments
// of v integrate v' exactly, so the v' singularity at 0 costs nothing.
std::vector<double> solve_inhomogeneous_repr(const Kernel& kernel, double lambda,
                                             const std::function<double(double)>& f,
                                             const TimeGrid& grid);

// Implicit stepping for D_(k) w + lambda w = f, w(0) = w0.
std::vector<double> solve_inhomogeneous_stepper(
    const Kernel& kernel, double lambda, const std::function<double(double)>& f,
    double w0, const TimeGrid& grid);

// ---- graded meshes --------------------------------------------------------
// The solutions behave like t^a near 0, which caps uniform-mesh product
// integration at first order. Grading t_n = T (n/N)^gamma with
// gamma ~ (2-a)/a restores the full 2-a rate. The weights
//   a_{n,j} = ( K1(t_n - t_{j-1}) - K1(t_n - t_j) ) / (t_j - t_{j-1})
// integrate the kernel exactly over every cell, as in the uniform case.

std::vector<double> graded_nodes(double T, int N, double gamma);

std::vector<double> solve_relax_ode(const Kernel& kernel, double lambda,
                                    double w0, const std::vector<double>& nodes);

std::vector<double> solve_inhomogeneous_repr(const Kernel& kernel, double lambda,
                                             const std::function<double(double)>& f,
                                             const std::vector<double>& nodes);

std::vector<double> solve_inhomogeneous_stepper(
    const Kernel& kernel, double lambda, const std::function<double(double)>& f,
    double w0, const std::vector<double>& nodes);

}  // namespace gf

#endif
