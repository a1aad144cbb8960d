#include "gf/gode.hpp"

#include <cmath>
#include <stdexcept>

#include "gf/relaxation.hpp"

namespace gf {

TimeGrid::TimeGrid(double h_, int steps_) : h(h_), steps(steps_) {
    if (!(h > 0.0)) throw std::invalid_argument("time step must be positive");
    if (steps < 2) throw std::invalid_argument("need at least 2 steps");
}

ConvolutionWeights::ConvolutionWeights(const Kernel& kernel, const TimeGrid& grid)
    : grid_(grid), c_(grid.steps) {
    double prev = 0.0;  // K1(0) = 0
    for (int m = 0; m < grid.steps; ++m) {
        double next = kernel.l1_norm(grid.node(m + 1));
        c_[m] = (next - prev) / grid.h;
        prev = next;
    }
}

std::vector<double> ConvolutionWeights::row(int n) const {
    if (n < 1 || n > grid_.steps) throw std::out_of_range("weight row index");
    // Abel summation of sum_j c_{n-j} (v_j - v_{j-1}) into (v_j - v_0) form.
    std::vector<double> w(n + 1, 0.0);
    w[n] = c_[0];
    for (int j = 1; j < n; ++j) w[j] = c_[n - j] - c_[n - j - 1];
    w[0] = -c_[n - 1];
    return w;
}

std::vector<double> apply_dk(const Kernel& kernel, const TimeGrid& grid,
                             const std::vector<double>& samples) {
    if ((int)samples.size() != grid.size())
        throw std::invalid_argument("sample count does not match grid");
    ConvolutionWeights cw(kernel, grid);
    std::vector<double> out(grid.steps);
    for (int n = 1; n <= grid.steps; ++n) {
        double sum = 0.0;
        for (int j = 1; j <= n; ++j)
            sum += cw.cell_average(n - j) * (samples[j] - samples[j - 1]);
        out[n - 1] = sum;
    }
    return out;
}

std::vector<double> solve_relax_ode(const Kernel& kernel, double lambda,
                                    double w0, const TimeGrid& grid) {
    if (lambda < 0.0) throw std::domain_error("lambda must be >= 0");
    ConvolutionWeights cw(kernel, grid);
    std::vector<double> w(grid.size());
    w[0] = w0;
    const double c0 = cw.cell_average(0);
    for (int n = 1; n <= grid.steps; ++n) {
        double history = 0.0;
        for (int j = 1; j < n; ++j)
            history += cw.cell_average(n - j) * (w[j] - w[j - 1]);
        w[n] = (c0 * w[n - 1] - history) / (c0 + lambda);
        if (!std::isfinite(w[n]))
            throw std::runtime_error("relaxation stepping diverged");
    }
    return w;
}

std::vector<double> solve_inhomogeneous_repr(const Kernel& kernel, double lambda,
                                             const std::function<double(double)>& f,
                                             const TimeGrid& grid) {
    if (!(lambda > 0.0))
        throw std::domain_error("the representation requires lambda > 0");
    // v at the grid nodes from the Laplace-domain route; independent of the
    // stepping scheme so the two solvers can cross-check each other.
    std::vector<double> v(grid.size());
    v[0] = 1.0;
    for (int n = 1; n <= grid.steps; ++n)
        v[n] = relax(kernel, lambda, grid.node(n));

    // w(t_n) = -(1/lambda) sum_j (v(t_j)-v(t_{j-1})) f(t_n - t_{j-1/2})
    std::vector<double> w(grid.size(), 0.0);
    for (int n = 1; n <= grid.steps; ++n) {
        double sum = 0.0;
        for (int j = 1; j <= n; ++j) {
            double s_mid = grid.node(n) - (grid.node(j - 1) + grid.node(j)) * 0.5;
            sum += (v[j] - v[j - 1]) * f(s_mid);
        }
        w[n] = -sum / lambda;
    }
    return w;
}

std::vector<double> solve_inhomogeneous_stepper(
    const Kernel& kernel, double lambda, const std::function<double(double)>& f,
    double w0, const TimeGrid& grid) {
    if (lambda < 0.0) throw std::domain_error("lambda must be >= 0");
    ConvolutionWeights cw(kernel, grid);
    std::vector<double> w(grid.size());
    w[0] = w0;
    const double c0 = cw.cell_average(0);
    for (int n = 1; n <= grid.steps; ++n) {
        double history = 0.0;
        for (int j = 1; j < n; ++j)
            history += cw.cell_average(n - j) * (w[j] - w[j - 1]);
        w[n] = (c0 * w[n - 1] - history + f(grid.node(n))) / (c0 + lambda);
        if (!std::isfinite(w[n]))
            throw std::runtime_error("inhomogeneous stepping diverged");
    }
    return w;
}

// ---- graded meshes --------------------------------------------------------

namespace {

void check_nodes(const std::vector<double>& nodes) {
    if (nodes.size() < 3 || nodes.front() != 0.0)
        throw std::invalid_argument("need nodes 0 = t_0 < t_1 < ... (>= 3)");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i] < nodes[i + 1]))
            throw std::invalid_argument("nodes must increase strictly");
}

// K1(t_n - t_j) for j = 0..n, reused across the weight row of step n.
struct K1Row {
    const Kernel& kernel;
    const std::vector<double>& t;

    double weight(int n, int j) const {
        // a_{n,j}; K1(0) = 0 handles the j = n cell
        double upper = kernel.l1_norm(t[n] - t[j - 1]);
        double lower = j == n ? 0.0 : kernel.l1_norm(t[n] - t[j]);
        return (upper - lower) / (t[j] - t[j - 1]);
    }
};

}  // namespace

std::vector<double> graded_nodes(double T, int N, double gamma) {
    if (!(T > 0.0) || N < 2 || !(gamma >= 1.0))
        throw std::invalid_argument("graded_nodes: T > 0, N >= 2, gamma >= 1");
    std::vector<double> t(N + 1);
    for (int n = 0; n <= N; ++n) t[n] = T * std::pow(double(n) / N, gamma);
    return t;
}

std::vector<double> solve_relax_ode(const Kernel& kernel, double lambda,
                                    double w0, const std::vector<double>& nodes) {
    if (lambda < 0.0) throw std::domain_error("lambda must be >= 0");
    check_nodes(nodes);
    K1Row row{kernel, nodes};
    const int N = int(nodes.size()) - 1;
    std::vector<double> w(nodes.size());
    w[0] = w0;
    for (int n = 1; n <= N; ++n) {
        double ann = row.weight(n, n);
        double history = 0.0;
        for (int j = 1; j < n; ++j)
            history += row.weight(n, j) * (w[j] - w[j - 1]);
        w[n] = (ann * w[n - 1] - history) / (ann + lambda);
        if (!std::isfinite(w[n]))
            throw std::runtime_error("relaxation stepping diverged");
    }
    return w;
}

std::vector<double> solve_inhomogeneous_repr(const Kernel& kernel, double lambda,
                                             const std::function<double(double)>& f,
                                             const std::vector<double>& nodes) {
    if (!(lambda > 0.0))
        throw std::domain_error("the representation requires lambda > 0");
    check_nodes(nodes);
    const int N = int(nodes.size()) - 1;
    std::vector<double> v(nodes.size());
    v[0] = 1.0;
    for (int n = 1; n <= N; ++n) v[n] = relax(kernel, lambda, nodes[n]);

    std::vector<double> w(nodes.size(), 0.0);
    for (int n = 1; n <= N; ++n) {
        double sum = 0.0;
        for (int j = 1; j <= n; ++j) {
            double s_mid = nodes[n] - 0.5 * (nodes[j - 1] + nodes[j]);
            sum += (v[j] - v[j - 1]) * f(s_mid);
        }
        w[n] = -sum / lambda;
    }
    return w;
}

std::vector<double> solve_inhomogeneous_stepper(
    const Kernel& kernel, double lambda, const std::function<double(double)>& f,
    double w0, const std::vector<double>& nodes) {
    if (lambda < 0.0) throw std::domain_error("lambda must be >= 0");
    check_nodes(nodes);
    K1Row row{kernel, nodes};
    const int N = int(nodes.size()) - 1;
    std::vector<double> w(nodes.size());
    w[0] = w0;
    for (int n = 1; n <= N; ++n) {
        double ann = row.weight(n, n);
        double history = 0.0;
        for (int j = 1; j < n; ++j)
            history += row.weight(n, j) * (w[j] - w[j - 1]);
        w[n] = (ann * w[n - 1] - history + f(nodes[n])) / (ann + lambda);
        if (!std::isfinite(w[n]))
            throw std::runtime_error("inhomogeneous stepping diverged");
    }
    return w;
}

}  // namespace gf
