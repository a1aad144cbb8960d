#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gf/gode.hpp"
#include "gf/mittag_leffler.hpp"
#include "gf/relaxation.hpp"

using namespace gf;

TEST_CASE("weights reproduce the classical L1 coefficients for the power law") {
    double alpha = 0.5;
    auto k = Kernel::power_law(alpha);
    TimeGrid grid(0.25, 8);
    ConvolutionWeights cw(k, grid);
    for (int m = 0; m < 8; ++m) {
        double exact = std::pow(grid.h, -alpha) *
                       (std::pow(m + 1.0, 1.0 - alpha) - std::pow(m, 1.0 - alpha)) /
                       std::tgamma(2.0 - alpha);
        CHECK(cw.cell_average(m) == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("weight rows sum to zero (constants are annihilated)") {
    auto k = Kernel::multi_term({{1.0, 0.3}, {2.0, 0.7}});
    TimeGrid grid(0.1, 16);
    ConvolutionWeights cw(k, grid);
    for (int n : {1, 5, 16}) {
        auto row = cw.row(n);
        REQUIRE((int)row.size() == n + 1);
        double sum = 0.0;
        for (double w : row) sum += w;
        CHECK(std::abs(sum) < 1e-12 * std::abs(row[n]));
    }
}

TEST_CASE("discrete operator is exact on linear functions") {
    auto k = Kernel::power_law(0.4);
    TimeGrid grid(0.125, 16);
    std::vector<double> v(grid.size());
    for (int n = 0; n <= grid.steps; ++n) v[n] = 2.0 + 3.0 * grid.node(n);
    auto d = apply_dk(k, grid, v);
    // D_(k)(a + b t)(t_n) = b ||k||_L1(0,t_n)
    for (int n = 1; n <= grid.steps; ++n)
        CHECK(d[n - 1] ==
              doctest::Approx(3.0 * k.l1_norm(grid.node(n))).epsilon(1e-12));
    std::vector<double> c(grid.size(), 5.0);
    for (double x : apply_dk(k, grid, c)) CHECK(std::abs(x) < 1e-13);
}

TEST_CASE("implicit stepping converges to the Mittag-Leffler solution") {
    double alpha = 0.5, lambda = 1.0;
    auto k = Kernel::power_law(alpha);
    TimeGrid grid(1.0 / 256, 256);
    auto w = solve_relax_ode(k, lambda, 1.0, grid);
    double worst = 0.0;
    for (int n = 1; n <= grid.steps; ++n)
        worst = std::max(worst, std::abs(w[n] - ml_relaxation(alpha, lambda,
                                                              grid.node(n))));
    // uniform meshes only reach first order through the t^a initial layer,
    // so the sup sits on the first few nodes
    CHECK(worst < 5e-2);
    // terminal-time error much tighter than the sup over the initial layer
    CHECK(std::abs(w[grid.steps] - ml_relaxation(alpha, lambda, 1.0)) < 1e-3);
}

TEST_CASE("grading the mesh restores the full convergence rate") {
    double alpha = 0.5, lambda = 1.0;
    auto k = Kernel::power_law(alpha);
    double exact = ml_relaxation(alpha, lambda, 1.0);
    std::vector<double> errs;
    for (int N : {64, 128, 256, 512}) {
        auto w = solve_relax_ode(k, lambda, 1.0, graded_nodes(1.0, N, 3.0));
        errs.push_back(std::abs(w[N] - exact));
    }
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
        double order = std::log2(errs[i] / errs[i + 1]);
        INFO("N=" << (64 << i) << " err=" << errs[i] << " order=" << order);
        CHECK(order > 1.4);  // theoretical rate 2 - alpha = 1.5
    }
    // and the graded terminal error beats the uniform one at matched N
    TimeGrid uniform(1.0 / 512, 512);
    auto wu = solve_relax_ode(k, lambda, 1.0, uniform);
    CHECK(errs.back() < std::abs(wu[512] - exact));
}

TEST_CASE("representation telescopes exactly for constant forcing") {
    auto k = Kernel::power_law(0.5);
    double lambda = 2.0, c = 3.0;
    TimeGrid grid(1.0 / 64, 64);
    auto w = solve_inhomogeneous_repr(k, lambda, [c](double) { return c; }, grid);
    for (int n = 1; n <= grid.steps; ++n) {
        double y = relax(k, lambda, grid.node(n));
        CHECK(w[n] == doctest::Approx(c / lambda * (1.0 - y)).epsilon(1e-10));
    }
}

TEST_CASE("representation and stepper agree for smooth forcing") {
    auto k = Kernel::power_law(0.5);
    auto f = [](double s) { return 1.0 + s - 0.5 * s * s + 0.1 * s * s * s; };
    auto nodes = graded_nodes(2.0, 512, 3.0);
    for (double lambda : {0.5, 2.0}) {
        auto wr = solve_inhomogeneous_repr(k, lambda, f, nodes);
        auto ws = solve_inhomogeneous_stepper(k, lambda, f, 0.0, nodes);
        double worst = 0.0;
        for (std::size_t n = 0; n < nodes.size(); ++n)
            worst = std::max(worst, std::abs(wr[n] - ws[n]));
        INFO("lambda=" << lambda << " sup diff=" << worst);
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("stepper handles lambda = 0 (pure integration)") {
    // D_(k) w = c with power-law k has solution w = c t^a / Gamma(1+a)
    double alpha = 0.5, c = 2.0;
    auto k = Kernel::power_law(alpha);
    TimeGrid grid(1.0 / 512, 512);
    auto w = solve_inhomogeneous_stepper(k, 0.0, [c](double) { return c; }, 0.0,
                                         grid);
    double exact = c * 1.0 / std::tgamma(1.0 + alpha);
    CHECK(w[grid.steps] == doctest::Approx(exact).epsilon(2e-3));
}

TEST_CASE("validation") {
    auto k = Kernel::power_law(0.5);
    CHECK_THROWS_AS(TimeGrid(0.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid(0.1, 1), std::invalid_argument);
    TimeGrid grid(0.1, 8);
    CHECK_THROWS_AS(apply_dk(k, grid, std::vector<double>(3, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_relax_ode(k, -1.0, 1.0, grid), std::domain_error);
    CHECK_THROWS_AS(
        solve_inhomogeneous_repr(k, 0.0, [](double) { return 1.0; }, grid),
        std::domain_error);
    ConvolutionWeights cw(k, grid);
    CHECK_THROWS_AS(cw.row(0), std::out_of_range);
    CHECK_THROWS_AS(cw.row(9), std::out_of_range);

    CHECK_THROWS_AS(graded_nodes(0.0, 8, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(graded_nodes(1.0, 1, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(graded_nodes(1.0, 8, 0.5), std::invalid_argument);
    std::vector<double> bad{0.0, 0.5, 0.25, 1.0};
    CHECK_THROWS_AS(solve_relax_ode(k, 1.0, 1.0, bad), std::invalid_argument);
    std::vector<double> off{0.1, 0.5, 1.0};
    CHECK_THROWS_AS(solve_relax_ode(k, 1.0, 1.0, off), std::invalid_argument);
}
