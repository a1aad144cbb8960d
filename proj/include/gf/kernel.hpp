#ifndef GF_KERNEL_HPP
#define GF_KERNEL_HPP

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gf/report.hpp"

namespace gf {

// Memory kernels of the nonlocal derivative
//   D_(k) v(t) = d/dt int_0^t k(t-s) v(s) ds - k(t) v(0).
// All supported variants are finite sums of power laws
//   k(t) = sum_i b_i t^(-a_i) / Gamma(1 - a_i),   a_i in (0,1), b_i > 0,
// which keeps k(t), khat(s) and the L1 norm in closed form. A distributed
// order kernel is stored as the quadrature discretization of its weight,
// i.e. the same sum with b_i = w_i * p(a_i).

struct PowerLaw {
    double alpha;
};

struct MultiTerm {
    // (coefficient, exponent) pairs
    std::vector<std::pair<double, double>> terms;
};

struct DistributedOrder {
    std::vector<double> nodes;    // quadrature nodes in (0,1)
    std::vector<double> weights;  // quadrature weight times p(node)
};

class Kernel {
  public:
    using Variant = std::variant<PowerLaw, MultiTerm, DistributedOrder>;

    explicit Kernel(Variant v);

    static Kernel power_law(double alpha);
    static Kernel multi_term(std::vector<std::pair<double, double>> terms);
    static Kernel distributed(std::vector<double> nodes,
                              std::vector<double> weights);
    // Uniform weight p = 1 discretized by an n-point Gauss-Legendre rule.
    static Kernel distributed_uniform(int n_nodes);

    const Variant& variant() const { return variant_; }

    // k(t), t > 0
    double eval(double t) const;

    // khat(s) = int_0^inf k(t) e^{-st} dt, Re s > 0; principal branch of s^a.
    std::complex<double> laplace(std::complex<double> s) const;
    double laplace(double s) const;

    // int_0^t k(s) ds, t > 0 (closed form)
    double l1_norm(double t) const;

    // int_0^t ds / (s k(s)), t > 0. Finite for every supported kernel since
    // t k(t) ~ t^(1-a) near 0; evaluated by quadrature with the power-law
    // endpoint handled analytically for the single-term case.
    double inv_tk_integral(double t) const;

    std::string describe() const;

    // Flat (coefficient, exponent) view of the power-law sum.
    const std::vector<std::pair<double, double>>& components() const {
        return components_;
    }

  private:
    Variant variant_;
    std::vector<std::pair<double, double>> components_;
};

// Numerical screening of the admissibility conditions on a log-spaced s-grid:
// positivity and strict decrease of khat, sign alternation of divided
// differences up to order 4 (complete-monotonicity proxy for the Stieltjes
// property), and log-log endpoint slopes encoding khat -> 0, s khat -> inf as
// s -> inf and khat -> inf, s khat -> 0 as s -> 0.
VerificationReport check_conditions(const Kernel& kernel,
                                    const std::vector<double>& s_grid);

// Conjugate kernel l with (k * l)(t) = 1. Closed form only for the
// single power law: l(t) = t^(a-1)/Gamma(a); absent otherwise.
struct SonineConjugate {
    double alpha;
    double eval(double t) const;
};

std::optional<SonineConjugate> sonine_conjugate(const Kernel& kernel);

// Configuration parsing. JSON form:
//   {"type":"power_law","alpha":0.5}
//   {"type":"multi_term","terms":[[1.0,0.3],[2.0,0.7]]}
//   {"type":"distributed","nodes":[...],"weights":[...]}
// Compact form: "power_law:0.5", "multi_term:1,0.3;2,0.7",
// "distributed:uniform8".
Kernel kernel_from_json(const std::string& text);
Kernel kernel_from_spec(const std::string& spec);

std::vector<double> log_grid(double lo, double hi, int points);

}  // namespace gf

#endif
