#include "gf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>

#include "gf/cauchy.hpp"
#include "gf/gode.hpp"
#include "gf/relaxation.hpp"
#include "gf/subordination.hpp"

namespace gf {

namespace {

// Representation route vs implicit stepping for D_(k)w + lambda w = f, w(0)=0.
VerificationReport cross_check_ode(const Kernel& kernel) {
    VerificationReport report;
    auto f = [](double s) { return 1.0 + 0.5 * s - 0.125 * s * s; };
    for (double lambda : {0.5, 2.0, 10.0}) {
        auto nodes = graded_nodes(2.0, 256, 3.0);
        auto wr = solve_inhomogeneous_repr(kernel, lambda, f, nodes);
        auto ws = solve_inhomogeneous_stepper(kernel, lambda, f, 0.0, nodes);
        double diff = 0.0;
        for (std::size_t i = 0; i < wr.size(); ++i)
            diff = std::max(diff, std::abs(wr[i] - ws[i]));
        report.add(Check::upper_bound(
            "ode_cross_oracle@lambda=" + std::to_string(lambda),
            "sup |w_repr - w_step| small on [0,2]", diff, 1e-3, 0.0));
    }
    return report;
}

}  // namespace

SuiteName suite_from_string(const std::string& name) {
    if (name == "default") return SuiteName::Default;
    if (name == "extended") return SuiteName::Extended;
    throw std::invalid_argument("unknown suite: " + name);
}

VerificationReport verify_suite(SuiteName name, const Kernel& kernel) {
    std::vector<VerificationReport> parts;

    parts.push_back(check_conditions(kernel, log_grid(1e-3, 1e3, 80)));

    auto t_grid = log_grid(1e-2, 1e2, 64);
    for (double lambda : {0.5, 2.0, 10.0})
        parts.push_back(check_relax_bounds(kernel, lambda, t_grid));

    parts.push_back(check_complete_monotonicity(
        relax_curve(kernel, 1.0, log_grid(1e-2, 1e2, 96)), 4));

    parts.push_back(cross_check_ode(kernel));

    {
        BoxGrid grid(1, 20.0, 128);
        auto u0 = GridField::gaussian(grid, 1.0);
        parts.push_back(
            verify_homogeneous_estimates(kernel, u0, {0.01, 0.1, 1.0, 10.0}));
    }

    parts.push_back(check_subordination(kernel, 1.0, {0.5, 2.0, 10.0}));

    if (name == SuiteName::Extended) {
        {
            BoxGrid grid(2, 10.0, 64);
            auto u0 = GridField::gaussian(grid, 1.0);
            parts.push_back(
                verify_homogeneous_estimates(kernel, u0, {0.1, 1.0, 10.0}));
        }
        {
            BoxGrid grid(3, 8.0, 32);
            auto u0 = GridField::gaussian(grid, 1.0);
            parts.push_back(
                verify_homogeneous_estimates(kernel, u0, {0.1, 1.0}));
        }
        {
            BoxGrid grid(1, 20.0, 128);
            auto h = separable_source(GridField::gaussian(grid, 1.0),
                                      [](double s) { return 1.0 / (1.0 + s); });
            parts.push_back(
                verify_source_estimates(kernel, h, grid, {0.5, 2.0}, 128));
        }
        {
            BoxGrid grid(1, 400.0, 2048);
            auto u0 = GridField::gaussian(grid, 1.0);
            auto fit = decay_exponent_fit(kernel, u0, 1e2, 1e4, 9);
            VerificationReport r;
            if (std::isnan(fit.expected)) {
                r.add(Check::skipped("decay_exponent",
                                     "|slope - expected| <= 0.15 |expected|",
                                     "no closed-form exponent for this kernel"));
            } else {
                r.add(Check::upper_bound(
                    "decay_exponent",
                    "|slope - expected| <= 0.15 |expected| (expected = -n a/4)",
                    std::abs(fit.slope - fit.expected),
                    0.15 * std::abs(fit.expected), 0.0));
            }
            parts.push_back(std::move(r));
        }
        parts.push_back(compare_sampler_to_solver(kernel, 1.0, 200000, 20260824));
    }

    auto report = merge(parts);
    report.metadata["suite"] =
        name == SuiteName::Default ? "default" : "extended";
    report.metadata["kernel"] = kernel.describe();
    return report;
}

}  // namespace gf
