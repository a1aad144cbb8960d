#include "gf/mittag_leffler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace gf {

namespace detail {

// Truncated power series with long-double accumulation. Reports whether it
// converged and how much alternating cancellation occurred (max term / |sum|).
double ml_series(double alpha, double beta, double z, bool* converged,
                 double* cancellation) {
    long double sum = 0.0L, max_term = 0.0L;
    const long double lz = std::log(std::abs((long double)z));
    int small_terms = 0;
    bool ok = false;
    for (int j = 0; j <= 2000; ++j) {
        long double lt = j * lz - lgammal(alpha * (long double)j + beta);
        long double term = expl(lt);
        if (z < 0 && (j & 1)) term = -term;
        sum += term;
        max_term = std::max(max_term, fabsl(term));
        if (fabsl(term) < 1e-19L * (fabsl(sum) + 1e-300L))
            ++small_terms;
        else
            small_terms = 0;
        if (small_terms >= 2 && j >= 4) {
            ok = true;
            break;
        }
    }
    if (converged) *converged = ok;
    if (cancellation)
        *cancellation = double(max_term / std::max(fabsl(sum), 1e-300L));
    return double(sum);
}

// Real-line integral representation for z < 0, 0 < alpha < 1, beta < 1+alpha.
// With the substitution r = y^alpha the Bromwich-type contour integral becomes
//   E_{a,b}(z) = (1/pi) int_0^inf e^{-y} y^{a-b}
//                [ y^a sin(pi(1-b)) - z sin(pi(1-b+a)) ]
//                / ( y^{2a} - 2 y^a z cos(pi a) + z^2 ) dy,
// whose denominator is bounded below by z^2 sin^2(pi a) on the negative axis.
double ml_integral(double alpha, double beta, double z) {
    using std::numbers::pi;
    const double s1 = std::sin(pi * (1.0 - beta));
    const double s2 = std::sin(pi * (1.0 - beta + alpha));
    const double c = std::cos(pi * alpha);
    auto f = [&](double y) {
        double ya = std::pow(y, alpha);
        double num = ya * s1 - z * s2;
        double den = ya * ya - 2.0 * ya * z * c + z * z;
        return std::exp(-y) * std::pow(y, alpha - beta) * num / den / pi;
    };
    boost::math::quadrature::tanh_sinh<double> integ;
    // e^{-y} is below 2e-22 past the cutoff; the rational factor is bounded.
    return integ.integrate(f, 0.0, 50.0, 1e-13);
}

}  // namespace detail

namespace {

double ml_negative(double alpha, double beta, double z) {
    // beta reduction so the integral's endpoint singularity stays integrable;
    // climb back with E_{a,b+a}(z) = (E_{a,b}(z) - 1/Gamma(b)) / z.
    int steps = 0;
    double beta0 = beta;
    while (beta0 > 1.0) {
        beta0 -= alpha;
        ++steps;
    }
    if (beta0 <= 0.0) {
        beta0 += alpha;
        --steps;
    }
    double value = detail::ml_integral(alpha, beta0, z);
    for (int i = 0; i < steps; ++i) {
        value = (value - 1.0 / std::tgamma(beta0)) / z;
        beta0 += alpha;
    }
    return value;
}

}  // namespace

double ml(double alpha, double beta, double z) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("ml: alpha must lie in (0,1], got " +
                                std::to_string(alpha));
    if (!(beta > 0.0))
        throw std::domain_error("ml: beta must be positive, got " +
                                std::to_string(beta));
    if (z == 0.0) return 1.0 / std::tgamma(beta);
    if (alpha == 1.0 && beta == 1.0) return std::exp(z);

    bool converged = false;
    double cancellation = 0.0;
    double s = detail::ml_series(alpha, beta, z, &converged, &cancellation);
    if (converged && (z > 0.0 || cancellation < 1e6)) return s;

    if (z < 0.0) {
        if (alpha == 1.0)
            throw std::runtime_error(
                "ml: alpha=1 with large negative argument and beta != 1 is not "
                "supported");
        return ml_negative(alpha, beta, z);
    }

    // Large positive argument: exponential asymptotics.
    double za = std::pow(z, 1.0 / alpha);
    if (za > 700.0) return HUGE_VAL;
    double lead = std::pow(z, (1.0 - beta) / alpha) * std::exp(za) / alpha;
    double corr = 0.0;
    for (int j = 1; j <= 10; ++j) {
        double g = beta - alpha * j;
        // 1/Gamma at nonpositive integers is zero; lgamma poles are skipped.
        if (g <= 0.0 && g == std::floor(g)) continue;
        corr += std::pow(z, -j) / std::tgamma(g);
    }
    return lead - corr;
}

double ml_relaxation(double alpha, double lambda, double t) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("ml_relaxation: alpha must lie in (0,1]");
    if (lambda < 0.0)
        throw std::domain_error("ml_relaxation: lambda must be nonnegative");
    if (t < 0.0) throw std::domain_error("ml_relaxation: t must be nonnegative");
    if (lambda == 0.0 || t == 0.0) return 1.0;
    if (alpha == 1.0) return std::exp(-lambda * t);
    return ml(alpha, 1.0, -lambda * std::pow(t, alpha));
}

}  // namespace gf
