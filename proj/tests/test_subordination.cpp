#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gf/relaxation.hpp"
#include "gf/subordination.hpp"

using namespace gf;
using std::numbers::pi;

TEST_CASE("half-order density has the gaussian closed form") {
    // psi(t, tau) = exp(-tau^2/(4t)) / sqrt(pi t) for the power law a = 1/2
    auto k = Kernel::power_law(0.5);
    for (double t : {0.5, 1.0, 2.0})
        for (double tau : {0.1, 0.5, 1.0, 2.0}) {
            double exact = std::exp(-tau * tau / (4.0 * t)) / std::sqrt(pi * t);
            INFO("t=" << t << " tau=" << tau);
            CHECK(std::abs(psi(k, t, tau) - exact) < 1e-6);
        }
    // pinned spot value
    CHECK(psi(k, 1.0, 1.0) ==
          doctest::Approx(std::exp(-0.25) / std::sqrt(pi)).epsilon(1e-8));
}

TEST_CASE("density limit at tau = 0 is the kernel itself") {
    auto k = Kernel::multi_term({{1.0, 0.3}, {1.0, 0.7}});
    CHECK(psi(k, 2.0, 0.0) == doctest::Approx(k.eval(2.0)));
}

TEST_CASE("subordinator mean matches the closed form") {
    // E[tau] = t^a / Gamma(1+a) for the power law
    for (double alpha : {0.3, 0.5, 0.7})
        for (double t : {0.5, 1.0, 4.0}) {
            auto k = Kernel::power_law(alpha);
            double exact = std::pow(t, alpha) / std::tgamma(1.0 + alpha);
            CHECK(mean_subordinator(k, t) ==
                  doctest::Approx(exact).epsilon(1e-8));
        }
}

TEST_CASE("density normalizes and reconstructs the relaxation function") {
    for (const auto& k :
         {Kernel::power_law(0.5), Kernel::multi_term({{1.0, 0.3}, {1.0, 0.7}}),
          Kernel::distributed_uniform(8)}) {
        auto d = build_density(k, 1.0);
        INFO(k.describe());
        CHECK(std::abs(d.total_mass - 1.0) < 1e-3);
        // negative excursions are tail inversion noise; the distributed
        // kernel's tail rides on the real-axis fallback at ~1e-4 absolute
        CHECK(d.clamped_mass < 1e-3);
        for (double lambda : {0.5, 2.0, 10.0}) {
            double rec = reconstruct_relax(d, lambda);
            double direct = relax(k, lambda, 1.0);
            INFO("lambda=" << lambda << " rec=" << rec << " direct=" << direct);
            CHECK(std::abs(rec - direct) < 1e-4);
        }
    }
}

TEST_CASE("check_subordination bundles those properties") {
    auto report =
        check_subordination(Kernel::power_law(0.5), 1.0, {0.5, 2.0, 10.0});
    INFO(render(report, ReportFormat::Text));
    CHECK(report.passed());
    CHECK(report.checks.size() == 5);
}

TEST_CASE("sampling is deterministic under a fixed seed") {
    auto d = build_density(Kernel::power_law(0.5), 1.0, 200);
    auto a = sample_positions(d, 2, 64, 42);
    auto b = sample_positions(d, 2, 64, 42);
    CHECK(a == b);
    auto c = sample_positions(d, 2, 64, 43);
    CHECK(a != c);
}

TEST_CASE("sample second moment matches 2 E[tau]") {
    auto k = Kernel::power_law(0.5);
    auto d = build_density(k, 1.0);
    auto pts = sample_positions(d, 1, 200000, 7);
    double m2 = 0.0;
    for (const auto& p : pts) m2 += p[0] * p[0];
    m2 /= pts.size();
    CHECK(m2 == doctest::Approx(2.0 * d.mean_tau).epsilon(0.03));
}

TEST_CASE("histogram agrees with the spectral route") {
    auto report = compare_sampler_to_solver(Kernel::power_law(0.5), 1.0, 50000,
                                            123, 64);
    INFO(render(report, ReportFormat::Text));
    CHECK(report.passed());
}

TEST_CASE("too few samples yields a skip, not a failure") {
    auto report =
        compare_sampler_to_solver(Kernel::power_law(0.5), 1.0, 100, 1, 64);
    REQUIRE(report.checks.size() == 1);
    CHECK(report.checks[0].status == Check::Status::Skipped);
}

TEST_CASE("validation") {
    auto k = Kernel::power_law(0.5);
    CHECK_THROWS_AS(psi(k, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(psi(k, 1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(build_density(k, 1.0, 8), std::invalid_argument);
    auto d = build_density(k, 1.0, 200);
    CHECK_THROWS_AS(reconstruct_relax(d, -1.0), std::domain_error);
    CHECK_THROWS_AS(sample_positions(d, 4, 8, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_positions(d, 1, 0, 1), std::invalid_argument);
}
