#include "gf/relaxation.hpp"

#include <cmath>
#include <stdexcept>

namespace gf {

namespace {

TransformFunction relax_transform(const Kernel& kernel, double lambda,
                                  int s_power = 0) {
    return [&kernel, lambda, s_power](std::complex<double> s) {
        std::complex<double> khat = kernel.laplace(s);
        std::complex<double> yhat = khat / (s * khat + lambda);
        for (int i = 0; i < s_power; ++i) yhat *= s;
        return yhat;
    };
}

}  // namespace

InversionResult relax_result(const Kernel& kernel, double lambda, double t) {
    if (lambda < 0.0) throw std::domain_error("relax: lambda must be >= 0");
    if (!(t > 0.0)) throw std::domain_error("relax: t must be > 0");
    if (lambda == 0.0) return {1.0, InversionMethod::FixedTalbot, 0.0, false};
    return invert_cross_checked(relax_transform(kernel, lambda), t);
}

double relax(const Kernel& kernel, double lambda, double t) {
    return relax_result(kernel, lambda, t).value;
}

double relax_time_derivative(const Kernel& kernel, double lambda, double t,
                             int order) {
    if (order < 1) throw std::domain_error("derivative order must be >= 1");
    if (lambda < 0.0) throw std::domain_error("relax: lambda must be >= 0");
    if (!(t > 0.0)) throw std::domain_error("relax: t must be > 0");
    if (lambda == 0.0) return 0.0;  // Y == 1
    // L^-1{s^j Yhat} at t > 0 equals the j-th time derivative; the initial
    // values only contribute delta terms supported at t = 0.
    return invert(relax_transform(kernel, lambda, order), t,
                  InversionMethod::FixedTalbot)
        .value;
}

RelaxationCurve relax_curve(const Kernel& kernel, double lambda,
                            const std::vector<double>& t_grid) {
    RelaxationCurve curve{kernel, lambda, t_grid, {}, {}};
    curve.values.reserve(t_grid.size());
    curve.error_estimates.reserve(t_grid.size());
    for (double t : t_grid) {
        auto r = relax_result(kernel, lambda, t);
        curve.values.push_back(r.value);
        curve.error_estimates.push_back(r.error_estimate);
    }
    return curve;
}

VerificationReport check_relax_bounds(const Kernel& kernel, double lambda,
                                      const std::vector<double>& t_grid) {
    VerificationReport report;
    report.metadata["kernel"] = kernel.describe();
    report.metadata["lambda"] = std::to_string(lambda);

    double worst_a = -HUGE_VAL, worst_b = -HUGE_VAL, worst_c = -HUGE_VAL;
    double tol_a = 0.0, tol_b = 0.0, tol_c = 0.0;
    for (double t : t_grid) {
        auto y = relax_result(kernel, lambda, t);
        double knorm = kernel.l1_norm(t);
        double err = 10.0 * (y.error_estimate + 1e-12);

        double a = lambda * y.value - knorm / t;
        if (a > worst_a) {
            worst_a = a;
            tol_a = lambda * err;
        }
        double b = y.value - 1.0 / (1.0 + t * lambda / knorm);
        if (b > worst_b) {
            worst_b = b;
            tol_b = err;
        }
        double dy = relax_time_derivative(kernel, lambda, t, 1);
        double c = -t * kernel.eval(t) * dy - lambda * y.value;
        if (c > worst_c) {
            worst_c = c;
            tol_c = (t * kernel.eval(t) + lambda) * err;
        }
    }
    report.add(Check::upper_bound("relax_bound_rate",
                                  "lambda*Y(t,lambda) <= ||k||_L1(0,t)/t",
                                  worst_a, 0.0, tol_a));
    report.add(Check::upper_bound("relax_bound_resolvent",
                                  "Y(t,lambda) <= 1/(1 + t*lambda/||k||_L1(0,t))",
                                  worst_b, 0.0, tol_b));
    report.add(Check::upper_bound("relax_bound_derivative",
                                  "-t*k(t)*dY/dt <= lambda*Y(t,lambda)", worst_c,
                                  0.0, tol_c));
    return report;
}

VerificationReport check_complete_monotonicity(const RelaxationCurve& curve,
                                               int max_order) {
    if (max_order < 1 || max_order > 4)
        throw std::invalid_argument("max_order must be in [1,4]");
    VerificationReport report;
    report.metadata["kernel"] = curve.kernel.describe();
    report.metadata["lambda"] = std::to_string(curve.lambda);
    const auto& t = curve.t_grid;
    if (t.size() < 64) {
        report.add(Check::skipped("relax_cm", "(-1)^j d^jY/dt^j >= 0",
                                  "insufficient grid: need >= 64 points"));
        return report;
    }

    for (int order = 1; order <= max_order; ++order) {
        std::vector<double> d = curve.values;
        std::vector<double> e = curve.error_estimates;
        for (int j = 1; j <= order; ++j)
            for (std::size_t i = 0; i + j < t.size(); ++i) {
                double span = t[i + j] - t[i];
                d[i] = (d[i + 1] - d[i]) / span;
                e[i] = (e[i + 1] + e[i]) / span;
            }
        double sign = (order % 2 == 0) ? 1.0 : -1.0;
        double worst = -HUGE_VAL, tol = 0.0;
        for (std::size_t i = 0; i + order < t.size(); ++i) {
            double violation = -sign * d[i];
            if (violation > worst) {
                worst = violation;
                tol = 10.0 * e[i];
            }
        }
        report.add(Check::upper_bound(
            "relax_cm_order_" + std::to_string(order),
            "(-1)^j divided differences of Y(.,lambda) >= 0", worst, 0.0, tol));
    }
    return report;
}

}  // namespace gf
