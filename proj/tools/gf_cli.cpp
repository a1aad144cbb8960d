#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gf/cauchy.hpp"
#include "gf/gode.hpp"
#include "gf/kernel.hpp"
#include "gf/mittag_leffler.hpp"
#include "gf/relaxation.hpp"
#include "gf/report.hpp"
#include "gf/subordination.hpp"
#include "gf/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Shortest round-trip decimal representation; keeps CSV output byte-stable
// across platforms.
std::string fmt(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << content;
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::function<double(double)> parse_forcing(const std::string& spec) {
    if (spec == "zero") return [](double) { return 0.0; };
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "const") {
        double c = std::stod(rest);
        return [c](double) { return c; };
    }
    if (head == "poly") {
        std::vector<double> c;
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) c.push_back(std::stod(tok));
        if (c.empty()) throw std::invalid_argument("empty polynomial forcing");
        return [c](double s) {
            double v = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * s + *it;
            return v;
        };
    }
    if (head == "sin") {
        double omega = std::stod(rest);
        return [omega](double s) { return std::sin(omega * s); };
    }
    throw std::invalid_argument("unknown forcing spec: " + spec);
}

gf::GridField parse_field(const std::string& spec, const gf::BoxGrid& grid) {
    if (spec == "zero") return gf::GridField::zero(grid);
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "gaussian") return gf::GridField::gaussian(grid, std::stod(rest));
    if (head == "mode") {
        std::array<int, 3> k = {0, 0, 0};
        std::stringstream ss(rest);
        std::string tok;
        int i = 0;
        while (std::getline(ss, tok, ',') && i < 3) k[i++] = std::stoi(tok);
        return gf::GridField::mode(grid, k);
    }
    throw std::invalid_argument("unknown field spec: " + spec);
}

// Merge a JSON config file into the argument list: for every key not already
// given as an explicit flag, append "--key value". Explicit flags win.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string config_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") {
            config_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
    if (config_path.empty()) return args;
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config: " + config_path);
    json cfg = json::parse(in);
    if (!cfg.is_object()) throw std::invalid_argument("config must be an object");
    for (auto& [key, value] : cfg.items()) {
        std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        args.push_back(flag);
        if (value.is_string())
            args.push_back(value.get<std::string>());
        else
            args.push_back(value.dump());
    }
    return args;
}

struct Common {
    std::string kernel_spec = "power_law:0.5";
    std::string out_dir = ".";
    int threads = 0;

    void attach(CLI::App* app, bool with_kernel = true) {
        if (with_kernel)
            app->add_option("--kernel", kernel_spec, "kernel spec or JSON");
        app->add_option("--output-dir", out_dir, "output directory");
        app->add_option("--threads", threads,
                        "worker cap (GF_THREADS as fallback)");
        app->allow_extras(false);
    }

    gf::Kernel kernel() const { return gf::kernel_from_spec(kernel_spec); }
    fs::path out(const std::string& name) const {
        fs::create_directories(out_dir);
        return fs::path(out_dir) / name;
    }
};

int write_report_and_exit(const Common& common, const std::string& stem,
                          const gf::VerificationReport& report) {
    write_atomic(common.out(stem + ".report.json"),
                 gf::render(report, gf::ReportFormat::Json));
    std::cerr << gf::render(report, gf::ReportFormat::Text);
    return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"general-kernel fractional diffusion engine"};
    app.require_subcommand(1);

    Common c_ml, c_relax, c_ode, c_solve, c_sub, c_verify;

    auto* ml_cmd = app.add_subcommand("ml", "Mittag-Leffler evaluation");
    double ml_alpha = 0.5, ml_beta = 1.0, ml_z = 0.0;
    ml_cmd->add_option("--alpha", ml_alpha)->required();
    ml_cmd->add_option("--beta", ml_beta);
    ml_cmd->add_option("--z", ml_z)->required();
    c_ml.attach(ml_cmd, false);

    auto* relax_cmd = app.add_subcommand("relax", "relaxation function Y(t,lambda)");
    double rx_lambda = 1.0, rx_tmin = 1e-2, rx_tmax = 1e2;
    int rx_points = 64;
    bool rx_report = false;
    relax_cmd->add_option("--lambda", rx_lambda)->required();
    relax_cmd->add_option("--t-min", rx_tmin);
    relax_cmd->add_option("--t-max", rx_tmax);
    relax_cmd->add_option("--t-points", rx_points);
    relax_cmd->add_flag("--report", rx_report, "also write verification JSON");
    c_relax.attach(relax_cmd);

    auto* ode_cmd = app.add_subcommand("ode", "relaxation ODE, two routes");
    // --h (the step size) collides with the default -h help alias
    ode_cmd->set_help_flag("--help", "print help");
    double ode_lambda = 1.0, ode_w0 = 0.0, ode_h = 1.0 / 256;
    int ode_steps = 512;
    std::string ode_forcing = "zero";
    ode_cmd->add_option("--lambda", ode_lambda)->required();
    ode_cmd->add_option("--w0", ode_w0);
    ode_cmd->add_option("--forcing", ode_forcing);
    ode_cmd->add_option("--h", ode_h);
    ode_cmd->add_option("--steps", ode_steps);
    c_ode.attach(ode_cmd);

    auto* solve_cmd = app.add_subcommand("solve", "Cauchy problem on a periodic box");
    int sv_dim = 1, sv_M = 128;
    double sv_L = 20.0;
    std::string sv_initial = "gaussian:1", sv_source = "zero";
    std::vector<double> sv_times = {1.0};
    solve_cmd->add_option("--dim", sv_dim)->check(CLI::Range(1, 3));
    solve_cmd->add_option("--box-L", sv_L);
    solve_cmd->add_option("--grid-M", sv_M);
    solve_cmd->add_option("--initial", sv_initial);
    solve_cmd->add_option("--source", sv_source);
    solve_cmd->add_option("--times", sv_times)->delimiter(',');
    c_solve.attach(solve_cmd);

    auto* sub_cmd = app.add_subcommand("subordinate", "subordination density and samples");
    double sb_t = 1.0;
    int sb_tau_points = 600, sb_samples = 0, sb_dim = 1;
    std::uint64_t sb_seed = 1;
    sub_cmd->add_option("--t", sb_t);
    sub_cmd->add_option("--tau-points", sb_tau_points);
    sub_cmd->add_option("--samples", sb_samples);
    sub_cmd->add_option("--seed", sb_seed);
    sub_cmd->add_option("--dim", sb_dim)->check(CLI::Range(1, 3));
    c_sub.attach(sub_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string vf_suite = "default";
    verify_cmd->add_option("--suite", vf_suite);
    c_verify.attach(verify_cmd);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config(std::move(args));
        // CLI11 consumes arguments in reverse order.
        std::vector<std::string> rargs(args.rbegin(), args.rend());
        app.parse(rargs);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (ml_cmd->parsed()) {
            double v = gf::ml(ml_alpha, ml_beta, ml_z);
            json out = {{"value", v},
                        {"error_estimate", 1e-10 * (1.0 + std::abs(v))}};
            std::cout << out.dump() << "\n";
            return 0;
        }

        if (relax_cmd->parsed()) {
            auto kernel = c_relax.kernel();
            auto grid = gf::log_grid(rx_tmin, rx_tmax, rx_points);
            auto curve = gf::relax_curve(kernel, rx_lambda, grid);
            std::string csv = "t,Y,error_estimate\n";
            for (std::size_t i = 0; i < grid.size(); ++i)
                csv += fmt(grid[i]) + "," + fmt(curve.values[i]) + "," +
                       fmt(curve.error_estimates[i]) + "\n";
            write_atomic(c_relax.out("relax.csv"), csv);
            if (rx_report)
                return write_report_and_exit(
                    c_relax, "relax",
                    gf::check_relax_bounds(kernel, rx_lambda, grid));
            return 0;
        }

        if (ode_cmd->parsed()) {
            auto kernel = c_ode.kernel();
            auto f = parse_forcing(ode_forcing);
            gf::TimeGrid grid(ode_h, ode_steps);
            auto ws = gf::solve_inhomogeneous_stepper(kernel, ode_lambda, f,
                                                      ode_w0, grid);
            std::vector<double> wr(grid.size(),
                                   std::numeric_limits<double>::quiet_NaN());
            if (ode_lambda > 0.0) {
                wr = gf::solve_inhomogeneous_repr(kernel, ode_lambda, f, grid);
                for (int n = 0; n < grid.size(); ++n)
                    if (ode_w0 != 0.0 && n > 0)
                        wr[n] += ode_w0 *
                                 gf::relax(kernel, ode_lambda, grid.node(n));
                if (ode_w0 != 0.0) wr[0] = ode_w0;
            }
            std::string csv = "t,w_repr,w_step,diff\n";
            for (int n = 0; n < grid.size(); ++n)
                csv += fmt(grid.node(n)) + "," + fmt(wr[n]) + "," + fmt(ws[n]) +
                       "," + fmt(std::abs(wr[n] - ws[n])) + "\n";
            write_atomic(c_ode.out("ode.csv"), csv);
            return 0;
        }

        if (solve_cmd->parsed()) {
            auto kernel = c_solve.kernel();
            gf::BoxGrid grid(sv_dim, sv_L, sv_M);
            for (double t : sv_times)
                if (!(t > 0.0))
                    throw std::invalid_argument("times must be positive");
            std::vector<gf::SolutionSnapshot> snaps;
            gf::VerificationReport report;
            bool has_source = sv_source != "zero";
            if (!has_source) {
                auto u0 = parse_field(sv_initial, grid);
                snaps = gf::solve_homogeneous(kernel, u0, sv_times);
                report = gf::verify_homogeneous_estimates(kernel, u0, sv_times);
            } else {
                if (sv_initial != "zero")
                    throw std::invalid_argument(
                        "source runs require zero initial data");
                auto h = gf::separable_source(parse_field(sv_source, grid),
                                              [](double) { return 1.0; });
                snaps = gf::solve_with_source(kernel, h, grid, sv_times);
                report = gf::verify_source_estimates(kernel, h, grid, sv_times);
            }
            std::string norms = "t,L2,H2,sup,DkL2\n";
            for (std::size_t i = 0; i < snaps.size(); ++i) {
                const auto& s = snaps[i];
                norms += fmt(s.time) + "," + fmt(s.norms.l2) + "," +
                         fmt(s.norms.h2) + "," + fmt(s.norms.sup) + "," +
                         fmt(s.norms.dk_l2) + "\n";
                std::string csv;
                for (int d = 0; d < grid.dim; ++d)
                    csv += "x" + std::to_string(d + 1) + ",";
                csv += "u\n";
                for (std::size_t flat = 0; flat < grid.total(); ++flat) {
                    std::size_t rest = flat;
                    // flat index is row-major: last axis fastest
                    std::array<int, 3> idx = {0, 0, 0};
                    for (int d = grid.dim - 1; d >= 0; --d) {
                        idx[d] = int(rest % grid.M);
                        rest /= grid.M;
                    }
                    for (int d = 0; d < grid.dim; ++d)
                        csv += fmt(grid.x(idx[d])) + ",";
                    csv += fmt(s.field.space[flat]) + "\n";
                }
                write_atomic(
                    c_solve.out("snapshot_" + std::to_string(i) + ".csv"), csv);
            }
            write_atomic(c_solve.out("norms.csv"), norms);
            return write_report_and_exit(c_solve, "solve", report);
        }

        if (sub_cmd->parsed()) {
            auto kernel = c_sub.kernel();
            auto density = gf::build_density(kernel, sb_t, sb_tau_points);
            std::string csv = "tau,psi\n";
            for (std::size_t i = 0; i < density.tau.size(); ++i)
                csv += fmt(density.tau[i]) + "," + fmt(density.psi[i]) + "\n";
            write_atomic(c_sub.out("density.csv"), csv);
            if (sb_samples > 0) {
                auto pts =
                    gf::sample_positions(density, sb_dim, sb_samples, sb_seed);
                std::string scsv;
                for (int d = 0; d < sb_dim; ++d)
                    scsv += std::string(d ? "," : "") + "x" +
                            std::to_string(d + 1);
                scsv += "\n";
                for (const auto& p : pts) {
                    for (int d = 0; d < sb_dim; ++d)
                        scsv += std::string(d ? "," : "") + fmt(p[d]);
                    scsv += "\n";
                }
                write_atomic(c_sub.out("samples.csv"), scsv);
            }
            return 0;
        }

        if (verify_cmd->parsed()) {
            auto suite = gf::suite_from_string(vf_suite);
            auto kernel = c_verify.kernel();
            return write_report_and_exit(c_verify, "verify",
                                         gf::verify_suite(suite, kernel));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
