#include "gf/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <json.hpp>

namespace gf {

namespace {

void require_exponent(double a) {
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument(
            "kernel exponent must lie strictly inside (0,1), got " +
            std::to_string(a));
}

void require_coefficient(double b) {
    if (!(b > 0.0))
        throw std::invalid_argument("kernel coefficient must be positive, got " +
                                    std::to_string(b));
}

// Legendre nodes/weights on (-1,1) by Newton iteration on the Chebyshev guess.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p0 = 0, p1 = 0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * xi * p1 - j * p2) / (j + 1);
            }
            double dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
            double dx = p0 / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2 * j + 1) * xi * p1 - j * p2) / (j + 1);
        }
        double dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
        x[i] = xi;
        w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
}

}  // namespace

Kernel::Kernel(Variant v) : variant_(std::move(v)) {
    if (const auto* p = std::get_if<PowerLaw>(&variant_)) {
        require_exponent(p->alpha);
        components_.emplace_back(1.0, p->alpha);
    } else if (const auto* m = std::get_if<MultiTerm>(&variant_)) {
        if (m->terms.empty())
            throw std::invalid_argument("multi-term kernel needs at least one term");
        for (auto [b, a] : m->terms) {
            require_coefficient(b);
            require_exponent(a);
            components_.emplace_back(b, a);
        }
    } else {
        const auto& d = std::get<DistributedOrder>(variant_);
        if (d.nodes.empty() || d.nodes.size() != d.weights.size())
            throw std::invalid_argument(
                "distributed kernel needs matching nonempty nodes/weights");
        for (std::size_t i = 0; i < d.nodes.size(); ++i) {
            require_exponent(d.nodes[i]);
            require_coefficient(d.weights[i]);
            components_.emplace_back(d.weights[i], d.nodes[i]);
        }
    }
}

Kernel Kernel::power_law(double alpha) { return Kernel(PowerLaw{alpha}); }

Kernel Kernel::multi_term(std::vector<std::pair<double, double>> terms) {
    return Kernel(MultiTerm{std::move(terms)});
}

Kernel Kernel::distributed(std::vector<double> nodes,
                           std::vector<double> weights) {
    return Kernel(DistributedOrder{std::move(nodes), std::move(weights)});
}

Kernel Kernel::distributed_uniform(int n_nodes) {
    if (n_nodes < 1) throw std::invalid_argument("need at least one node");
    std::vector<double> x, w;
    gauss_legendre(n_nodes, x, w);
    std::vector<double> nodes(n_nodes), weights(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        nodes[i] = 0.5 * (x[i] + 1.0);  // map (-1,1) -> (0,1)
        weights[i] = 0.5 * w[i];        // p = 1
    }
    return distributed(std::move(nodes), std::move(weights));
}

double Kernel::eval(double t) const {
    if (!(t > 0.0)) throw std::domain_error("eval_k requires t > 0");
    double sum = 0.0;
    for (auto [b, a] : components_)
        sum += b * std::pow(t, -a) / std::tgamma(1.0 - a);
    return sum;
}

std::complex<double> Kernel::laplace(std::complex<double> s) const {
    // analytic on the cut plane C \ (-inf, 0]; contour methods evaluate it
    // well into the left half-plane
    if (s.imag() == 0.0 && !(s.real() > 0.0))
        throw std::domain_error("laplace_k is undefined on the branch cut");
    std::complex<double> sum = 0.0;
    for (auto [b, a] : components_) sum += b * std::pow(s, a - 1.0);
    return sum;
}

double Kernel::laplace(double s) const {
    if (!(s > 0.0)) throw std::domain_error("laplace_k requires s > 0");
    double sum = 0.0;
    for (auto [b, a] : components_) sum += b * std::pow(s, a - 1.0);
    return sum;
}

double Kernel::l1_norm(double t) const {
    if (!(t > 0.0)) throw std::domain_error("k_l1_norm requires t > 0");
    double sum = 0.0;
    for (auto [b, a] : components_)
        sum += b * std::pow(t, 1.0 - a) / std::tgamma(2.0 - a);
    return sum;
}

double Kernel::inv_tk_integral(double t) const {
    if (!(t > 0.0)) throw std::domain_error("requires t > 0");
    if (components_.size() == 1) {
        auto [b, a] = components_[0];
        // 1/(s k(s)) = Gamma(1-a)/b * s^(a-1)
        return std::tgamma(1.0 - a) / b * std::pow(t, a) / a;
    }
    // Integrand ~ s^(a_min - 1) near 0; tanh-sinh absorbs the singularity.
    boost::math::quadrature::tanh_sinh<double> integ;
    return integ.integrate([&](double s) { return 1.0 / (s * eval(s)); }, 0.0, t,
                           1e-12);
}

std::string Kernel::describe() const {
    std::ostringstream os;
    if (const auto* p = std::get_if<PowerLaw>(&variant_)) {
        os << "power_law:" << p->alpha;
    } else if (std::holds_alternative<MultiTerm>(variant_)) {
        os << "multi_term:";
        for (std::size_t i = 0; i < components_.size(); ++i) {
            if (i) os << ";";
            os << components_[i].first << "," << components_[i].second;
        }
    } else {
        os << "distributed[" << components_.size() << " nodes]";
    }
    return os.str();
}

double SonineConjugate::eval(double t) const {
    if (!(t > 0.0)) throw std::domain_error("sonine conjugate requires t > 0");
    return std::pow(t, alpha - 1.0) / std::tgamma(alpha);
}

std::optional<SonineConjugate> sonine_conjugate(const Kernel& kernel) {
    if (const auto* p = std::get_if<PowerLaw>(&kernel.variant()))
        return SonineConjugate{p->alpha};
    return std::nullopt;
}

namespace {

// Newton divided differences f[x_i,...,x_{i+order}] over every window.
std::vector<double> divided_differences(const std::vector<double>& x,
                                        const std::vector<double>& f,
                                        int order) {
    std::vector<double> d = f;
    for (int j = 1; j <= order; ++j)
        for (std::size_t i = 0; i + j < x.size(); ++i)
            d[i] = (d[i + 1] - d[i]) / (x[i + j] - x[i]);
    d.resize(x.size() - order);
    return d;
}

double loglog_slope(const std::vector<double>& s, const std::vector<double>& f,
                    std::size_t lo, std::size_t hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = double(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
        double x = std::log(s[i]), y = std::log(f[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

VerificationReport check_conditions(const Kernel& kernel,
                                    const std::vector<double>& s_grid) {
    VerificationReport report;
    report.metadata["kernel"] = kernel.describe();

    if (s_grid.size() < 8 ||
        s_grid.back() / s_grid.front() < 1e6 - 1e-6) {
        report.add(Check::skipped("kernel_conditions", "khat admissibility",
                                  "insufficient grid: need >= 8 points over >= 6 decades"));
        return report;
    }

    const std::size_t n = s_grid.size();
    std::vector<double> khat(n);
    for (std::size_t i = 0; i < n; ++i) khat[i] = kernel.laplace(s_grid[i]);

    double min_khat = *std::min_element(khat.begin(), khat.end());
    report.add(Check::upper_bound("khat_positive", "khat(s) > 0 on grid",
                                  -min_khat, 0.0, 0.0));

    double max_rise = -HUGE_VAL;
    for (std::size_t i = 0; i + 1 < n; ++i)
        max_rise = std::max(max_rise, khat[i + 1] - khat[i]);
    report.add(Check::upper_bound("khat_decreasing",
                                  "khat(s2) < khat(s1) for s1 < s2", max_rise,
                                  0.0, 1e-14 * khat.front()));

    // Stieltjes proxy: (-1)^j * f[x_i..x_{i+j}] >= 0 up to order 4.
    for (int order = 1; order <= 4; ++order) {
        auto dd = divided_differences(s_grid, khat, order);
        double sign = (order % 2 == 0) ? 1.0 : -1.0;
        double worst = 0.0, scale = 0.0;
        for (double v : dd) {
            worst = std::max(worst, -sign * v);
            scale = std::max(scale, std::abs(v));
        }
        report.add(Check::upper_bound(
            "khat_cm_order_" + std::to_string(order),
            "(-1)^j d^j khat/ds^j >= 0 (divided differences)", worst, 0.0,
            1e-9 * scale));
    }

    // Endpoint trends via log-log slopes over the outer decades. A power-law
    // tail khat ~ s^(a-1) with a in (0,1) gives slope in (-1,0) at both ends,
    // which is exactly what the limit conditions require for this family.
    std::size_t lo_hi = 0, hi_lo = n;
    while (lo_hi < n && s_grid[lo_hi] <= s_grid.front() * 10.0) ++lo_hi;
    while (hi_lo > 0 && s_grid[hi_lo - 1] >= s_grid.back() / 10.0) --hi_lo;
    double slope_lo = loglog_slope(s_grid, khat, 0, std::max<std::size_t>(lo_hi, 3));
    double slope_hi =
        loglog_slope(s_grid, khat, std::min(hi_lo, n - 3), n);

    report.add(Check::upper_bound("c3_khat_vanishes",
                                  "khat -> 0 as s -> inf (tail slope < 0)",
                                  slope_hi, -0.005, 0.0));
    report.add(Check::upper_bound("c3_s_khat_grows",
                                  "s*khat -> inf as s -> inf (tail slope of s*khat > 0)",
                                  -(slope_hi + 1.0), -0.005, 0.0));
    report.add(Check::upper_bound("c4_khat_grows",
                                  "khat -> inf as s -> 0 (head slope < 0)",
                                  slope_lo, -0.005, 0.0));
    report.add(Check::upper_bound("c4_s_khat_vanishes",
                                  "s*khat -> 0 as s -> 0 (head slope of s*khat > 0)",
                                  -(slope_lo + 1.0), -0.005, 0.0));
    return report;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0 && hi > lo) || points < 2)
        throw std::invalid_argument("log_grid requires 0 < lo < hi, points >= 2");
    std::vector<double> g(points);
    double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) g[i] = lo * std::exp(step * i);
    g.back() = hi;
    return g;
}

namespace {

Kernel kernel_from_parsed_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "power_law") return Kernel::power_law(j.at("alpha").get<double>());
    if (type == "multi_term") {
        std::vector<std::pair<double, double>> terms;
        for (const auto& t : j.at("terms"))
            terms.emplace_back(t.at(0).get<double>(), t.at(1).get<double>());
        return Kernel::multi_term(std::move(terms));
    }
    if (type == "distributed")
        return Kernel::distributed(j.at("nodes").get<std::vector<double>>(),
                                   j.at("weights").get<std::vector<double>>());
    throw std::invalid_argument("unknown kernel type: " + type);
}

}  // namespace

Kernel kernel_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("bad kernel JSON: ") + e.what());
    }
    return kernel_from_parsed_json(j);
}

Kernel kernel_from_spec(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return kernel_from_json(spec);
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "power_law") {
        std::size_t used = 0;
        double a = std::stod(rest, &used);
        if (used != rest.size())
            throw std::invalid_argument("bad power_law spec: " + spec);
        return Kernel::power_law(a);
    }
    if (head == "multi_term") {
        std::vector<std::pair<double, double>> terms;
        std::istringstream is(rest);
        std::string item;
        while (std::getline(is, item, ';')) {
            auto comma = item.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("bad multi_term spec: " + spec);
            terms.emplace_back(std::stod(item.substr(0, comma)),
                               std::stod(item.substr(comma + 1)));
        }
        return Kernel::multi_term(std::move(terms));
    }
    if (head == "distributed") {
        if (rest.rfind("uniform", 0) == 0)
            return Kernel::distributed_uniform(std::stoi(rest.substr(7)));
        throw std::invalid_argument(
            "distributed kernels take 'uniformN' or a JSON record: " + spec);
    }
    throw std::invalid_argument("unknown kernel spec: " + spec);
}

}  // namespace gf
