#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gf/cauchy.hpp"
#include "gf/mittag_leffler.hpp"
#include "gf/relaxation.hpp"

using namespace gf;
using std::numbers::pi;

TEST_CASE("transform round-trip is the identity") {
    for (int dim : {1, 2}) {
        BoxGrid grid(dim, 8.0, 32);
        auto u = GridField::gaussian(grid, 1.3);
        auto back = to_space(to_frequency(u));
        double worst = 0.0;
        for (std::size_t i = 0; i < u.space.size(); ++i)
            worst = std::max(worst, std::abs(u.space[i] - back.space[i]));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("Parseval holds between the two sides") {
    BoxGrid grid(1, 10.0, 64);
    auto u = GridField::gaussian(grid, 0.8);
    auto uf = to_frequency(u);
    double l2_space = 0.0;
    for (double v : u.space) l2_space += v * v * grid.spacing();
    double l2_freq = 0.0;
    for (auto v : uf.freq) l2_freq += std::norm(v) * grid.dxi();
    CHECK(std::sqrt(l2_space) == doctest::Approx(std::sqrt(l2_freq)).epsilon(1e-12));
}

TEST_CASE("gaussian transforms to the analytic gaussian") {
    // unitary convention: u0 = e^{-x^2/2} has u0hat(xi) = e^{-xi^2/2}
    BoxGrid grid(1, 20.0, 128);
    auto uf = to_frequency(GridField::gaussian(grid, 1.0));
    for (std::size_t i = 0; i < uf.freq.size(); ++i) {
        double xi2 = grid.lambda_of(i);
        CHECK(std::abs(uf.freq[i] - std::exp(-0.5 * xi2)) < 1e-8);
    }
}

TEST_CASE("norms of an explicit field") {
    BoxGrid grid(1, 5.0, 64);
    GridField one = GridField::zero(grid);
    for (double& v : one.space) v = 2.0;
    auto n = field_norms(one);
    CHECK(n.l2 == doctest::Approx(2.0 * std::sqrt(10.0)).epsilon(1e-10));
    CHECK(n.sup == doctest::Approx(2.0));
    CHECK(n.h2 == doctest::Approx(n.l2).epsilon(1e-10));  // constant: H2 == L2
    CHECK(n.dk_l2 == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("single mode evolves by the relaxation factor") {
    BoxGrid grid(1, 10.0, 64);
    auto u0 = GridField::mode(grid, {3, 0, 0});
    double lambda = std::pow(3.0 * grid.dxi(), 2);
    auto k = Kernel::power_law(0.5);
    auto snaps = solve_homogeneous(k, u0, {1.0});
    REQUIRE(snaps.size() == 1);
    double y = ml_relaxation(0.5, lambda, 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < u0.space.size(); ++i)
        worst = std::max(worst,
                         std::abs(snaps[0].field.space[i] - y * u0.space[i]));
    CHECK(worst < 1e-6);
}

TEST_CASE("homogeneous estimates pass on gaussian data in 1d") {
    auto k = Kernel::power_law(0.5);
    BoxGrid grid(1, 20.0, 128);
    auto u0 = GridField::gaussian(grid, 1.0);
    auto report = verify_homogeneous_estimates(k, u0, {0.01, 0.1, 1.0, 10.0});
    INFO(render(report, ReportFormat::Text));
    CHECK(report.passed());
    CHECK(report.checks.size() >= 24);
}

TEST_CASE("single-mode source solved by the representation") {
    // h(x) = cos(xi0 x) constant in time, zero data:
    // u(t,x) = cos(xi0 x) (1 - Y(t, xi0^2)) / xi0^2
    auto k = Kernel::power_law(0.5);
    BoxGrid grid(1, 10.0, 32);
    auto h = separable_source(GridField::mode(grid, {2, 0, 0}),
                              [](double) { return 1.0; });
    double lambda = std::pow(2.0 * grid.dxi(), 2);
    auto snaps = solve_with_source(k, h, grid, {1.0}, 128);
    double exact_amp = (1.0 - ml_relaxation(0.5, lambda, 1.0)) / lambda;
    auto mode = GridField::mode(grid, {2, 0, 0});
    double worst = 0.0;
    for (std::size_t i = 0; i < mode.space.size(); ++i)
        worst = std::max(worst, std::abs(snaps[0].field.space[i] -
                                         exact_amp * mode.space[i]));
    CHECK(worst < 1e-4);
}

TEST_CASE("constant-in-space source integrates through the zero mode") {
    // D_(k) u = c with zero data: u = c t^a / Gamma(1+a) for the power law
    double alpha = 0.5, c = 0.7;
    auto k = Kernel::power_law(alpha);
    BoxGrid grid(1, 5.0, 16);
    GridField cf = GridField::zero(grid);
    for (double& v : cf.space) v = c;
    auto h = separable_source(cf, [](double) { return 1.0; });
    auto snaps = solve_with_source(k, h, grid, {1.0}, 256);
    double exact = c / std::tgamma(1.0 + alpha);
    for (double v : snaps[0].field.space)
        CHECK(v == doctest::Approx(exact).epsilon(3e-3));
}

TEST_CASE("source estimates pass on separable gaussian forcing") {
    auto k = Kernel::power_law(0.5);
    BoxGrid grid(1, 20.0, 128);
    auto h = separable_source(GridField::gaussian(grid, 1.0),
                              [](double s) { return 1.0 / (1.0 + s); });
    auto report = verify_source_estimates(k, h, grid, {0.5, 2.0}, 128);
    INFO(render(report, ReportFormat::Text));
    CHECK(report.passed());
    CHECK(report.checks.size() >= 10);
}

TEST_CASE("decay fit recovers -n a / 4 for the power law") {
    auto k = Kernel::power_law(0.5);
    BoxGrid grid(1, 400.0, 2048);
    auto u0 = GridField::gaussian(grid, 1.0);
    auto fit = decay_exponent_fit(k, u0, 1e2, 1e4, 7);
    CHECK(fit.expected == doctest::Approx(-0.125));
    CHECK(std::abs(fit.slope - fit.expected) < 0.15 * std::abs(fit.expected));
}

TEST_CASE("decay fit rejects short windows") {
    auto k = Kernel::power_law(0.5);
    BoxGrid grid(1, 20.0, 32);
    auto u0 = GridField::gaussian(grid, 1.0);
    CHECK_THROWS_AS(decay_exponent_fit(k, u0, 10.0, 50.0, 7),
                    std::invalid_argument);
}

TEST_CASE("positivity within the spectral floor, improving with resolution") {
    auto k = Kernel::power_law(0.5);
    double viol[2];
    int idx = 0;
    for (int M : {32, 64}) {
        BoxGrid grid(1, 10.0, M);
        auto u0 = GridField::gaussian(grid, 1.0);
        auto snaps = solve_homogeneous(k, u0, {1.0});
        double eps = spectral_epsilon(snaps[0].field);
        double mn = min_value(snaps[0].field);
        CHECK(mn > -10.0 * eps);
        viol[idx++] = std::max(0.0, -mn);
    }
    CHECK(viol[1] <= viol[0] + 1e-14);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(BoxGrid(0, 1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(BoxGrid(1, -1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(BoxGrid(1, 1.0, 15), std::invalid_argument);
    CHECK_THROWS_AS(BoxGrid(1, 1.0, 4), std::invalid_argument);
    BoxGrid g(1, 1.0, 16);
    CHECK_THROWS_AS(GridField::gaussian(g, 0.0), std::invalid_argument);
    auto k = Kernel::power_law(0.5);
    auto u0 = GridField::gaussian(g, 1.0);
    CHECK_THROWS_AS(solve_homogeneous(k, u0, {0.0}), std::domain_error);
}
