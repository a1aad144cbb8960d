#ifndef GF_RELAXATION_HPP
#define GF_RELAXATION_HPP

#include <vector>

#include "gf/kernel.hpp"
#include "gf/laplace_inversion.hpp"
#include "gf/report.hpp"

namespace gf {

// Relaxation function Y(t,lambda): the mode solution of
//   D_(k) Y = -lambda Y,  Y(0) = 1,
// obtained by inverting  Yhat(s) = khat(s) / (s khat(s) + lambda).

struct RelaxationCurve {
    Kernel kernel;
    double lambda;
    std::vector<double> t_grid;
    std::vector<double> values;
    std::vector<double> error_estimates;
};

double relax(const Kernel& kernel, double lambda, double t);

// Same, with the inversion diagnostics exposed.
InversionResult relax_result(const Kernel& kernel, double lambda, double t);

// d^j Y / dt^j for t > 0, via contour inversion of s^j * Yhat(s) (the powers
// of s cost nothing on the contour and avoid differencing a completely
// monotone function). Satisfies |d^j Y/dt^j| <= (j/(e t))^j.
double relax_time_derivative(const Kernel& kernel, double lambda, double t,
                             int order);

RelaxationCurve relax_curve(const Kernel& kernel, double lambda,
                            const std::vector<double>& t_grid);

// Pointwise bounds from the relaxation analysis:
//  (a) lambda * Y(t,lambda) <= ||k||_L1(0,t) / t
//  (b) Y(t,lambda) <= 1 / (1 + t*lambda/||k||_L1(0,t))
//  (c) -t k(t) dY/dt <= lambda * Y(t,lambda)
VerificationReport check_relax_bounds(const Kernel& kernel, double lambda,
                                      const std::vector<double>& t_grid);

// Sign alternation of divided differences of Y(.,lambda) up to max_order
// (<= 4) on a log grid of at least 64 points; tolerance band is 10x the
// curve's inversion error estimates.
VerificationReport check_complete_monotonicity(const RelaxationCurve& curve,
                                               int max_order);

}  // namespace gf

#endif
