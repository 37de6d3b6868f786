// brx command-line front end. Everything goes through the C API in brx.h;
// the only other dependency is the flag parser.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brx.h"

namespace {

int exit_code_for(brx_status s) {
    switch (s) {
        case BRX_OK: return 0;
        case BRX_ERR_INFEASIBLE: return 2;
        case BRX_ERR_NON_CONVERGENCE: return 3;
        default: return 1;
    }
}

[[noreturn]] void die(brx_status s, const std::string& context) {
    std::fprintf(stderr, "error (%s): %s%s%s\n", brx_status_name(s), context.c_str(),
                 context.empty() ? "" : ": ", brx_last_error_detail());
    std::exit(exit_code_for(s));
}

void check(brx_status s, const std::string& context) {
    if (s != BRX_OK) die(s, context);
}

using InstancePtr = std::unique_ptr<brx_instance, decltype(&brx_instance_free)>;

InstancePtr load_instance(const std::string& path) {
    brx_instance* inst = nullptr;
    check(brx_instance_from_json_file(path.c_str(), &inst), path);
    return InstancePtr(inst, &brx_instance_free);
}

std::vector<double> parse_point(const std::string& text, size_t d, const char* what) {
    std::vector<double> out;
    std::string token;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        token = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            std::fprintf(stderr, "error: cannot parse %s component \"%s\"\n", what,
                         token.c_str());
            std::exit(1);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() == 1 && d > 1) out.assign(d, out[0]); // broadcast a scalar
    if (out.size() != d) {
        std::fprintf(stderr, "error: %s needs %zu components, got %zu\n", what, d, out.size());
        std::exit(1);
    }
    return out;
}

FILE* open_out(const std::string& path) {
    if (path.empty() || path == "-") return stdout;
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f) {
        std::fprintf(stderr, "error: cannot open %s for writing\n", path.c_str());
        std::exit(1);
    }
    return f;
}

void close_out(FILE* f) {
    if (f != stdout) std::fclose(f);
}

// ---------- subcommands ----------

int cmd_solve(const std::string& path) {
    InstancePtr inst = load_instance(path);
    brx_solve_report* rep = nullptr;
    check(brx_enumerate_solve(inst.get(), &rep), "solve");
    std::unique_ptr<brx_solve_report, decltype(&brx_solve_report_free)> guard(
        rep, &brx_solve_report_free);

    const size_t d = brx_instance_cols(inst.get());
    const bool feasible = brx_solve_report_feasible(rep) != 0;
    if (!feasible) {
        std::printf("infeasible: no binary point satisfies the constraints\n");
        std::printf("json: {\"feasible\":false,\"optima\":[]}\n");
        return 2;
    }
    const size_t count = brx_solve_report_count(rep);
    std::printf("feasible: yes\n");
    std::printf("optimal_value: %.12g\n", brx_solve_report_value(rep));
    std::printf("optima (%zu):\n", count);
    std::vector<uint8_t> x(d);
    std::string json = "{\"feasible\":true,\"optimal_value\":";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", brx_solve_report_value(rep));
    json += buf;
    json += ",\"optima\":[";
    for (size_t k = 0; k < count; ++k) {
        check(brx_solve_report_point(rep, k, x.data()), "solve");
        std::printf("  (");
        json += k ? ",[" : "[";
        for (size_t j = 0; j < d; ++j) {
            std::printf("%s%d", j ? ", " : "", static_cast<int>(x[j]));
            json += j ? "," : "";
            json += x[j] ? '1' : '0';
        }
        std::printf(")\n");
        json += "]";
    }
    json += "]}";
    std::printf("json: %s\n", json.c_str());
    return 0;
}

int cmd_threshold(const std::string& path) {
    InstancePtr inst = load_instance(path);
    double mu_star = 0.0;
    check(brx_mu_threshold(inst.get(), &mu_star), "threshold");
    std::printf("mu_star: %.12g\n", mu_star);
    std::printf("for every mu > mu_star (given a feasible binary point), the minimizers of\n"
                "  c.x + mu * sum_i E[max(a_i.x - b_i, 0)]\n"
                "over [0,1]^d coincide with the zero-expected-penalty minimizers of c.x\n");
    return 0;
}

int cmd_curves_1d(double a, double b, size_t resolution, const std::string& out_path) {
    // exact E of the true violation comes from the 1x1 instance
    const double b_arr[1] = {b};
    const double c_arr[1] = {0.0};
    brx_instance* raw = nullptr;
    check(brx_instance_create(&a, b_arr, c_arr, 1, 1, &raw), "curves-1d");
    InstancePtr inst(raw, &brx_instance_free);

    FILE* out = open_out(out_path);
    std::fprintf(out, "xhat,f1,phi_hat,phi_hat_hat,g_hat,true_penalty\n");
    const double lo = 0.001, hi = 0.999;
    for (size_t k = 0; k < resolution; ++k) {
        const double x =
            resolution == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) /
                                            static_cast<double>(resolution - 1);
        double f = 0, ph = 0, phh = 0, gh = 0, pen = 0;
        check(brx_f1(x, &f), "curves-1d");
        check(brx_potential_1d(a, b, x, &ph), "curves-1d");
        check(brx_effective_potential_1d(a, b, x, &phh), "curves-1d");
        check(brx_estimator_mean_1d(a, b, x, &gh), "curves-1d");
        check(brx_expected_penalty(inst.get(), &x, &pen), "curves-1d");
        std::fprintf(out, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", x, f, ph, phh, gh, pen);
    }
    close_out(out);
    return 0;
}

int cmd_field_2d(double a1, double a2, double b, size_t resolution,
                 const std::string& out_path) {
    FILE* out = open_out(out_path);
    std::fprintf(out, "x1,x2,g1,g2,curl\n");
    const double lo = 0.001, hi = 0.999;
    for (size_t i = 0; i < resolution; ++i) {
        const double x1 = resolution == 1 ? lo
                                          : lo + (hi - lo) * static_cast<double>(i) /
                                                     static_cast<double>(resolution - 1);
        for (size_t j = 0; j < resolution; ++j) {
            const double x2 = resolution == 1 ? lo
                                              : lo + (hi - lo) * static_cast<double>(j) /
                                                         static_cast<double>(resolution - 1);
            double g[2] = {0, 0};
            double curl = 0;
            check(brx_estimator_mean_field_2d(a1, a2, b, x1, x2, g), "field-2d");
            check(brx_curl_2d(a1, a2, b, x1, x2, &curl), "field-2d");
            std::fprintf(out, "%.12g,%.12g,%.12g,%.12g,%.12g\n", x1, x2, g[0], g[1], curl);
        }
    }
    close_out(out);
    return 0;
}

int cmd_bias(const std::string& path, const std::string& xhat_text, size_t constraint, size_t n,
             uint64_t seed, double h) {
    InstancePtr inst = load_instance(path);
    const size_t d = brx_instance_cols(inst.get());
    const std::vector<double> xhat = parse_point(xhat_text, d, "--xhat");
    std::vector<double> est(d), est_se(d), ora(d), ora_se(d), gap(d), gap_se(d);
    check(brx_bias_report(inst.get(), constraint, xhat.data(), n, seed, h, est.data(),
                          est_se.data(), ora.data(), ora_se.data(), gap.data(), gap_se.data()),
          "bias");
    std::printf("constraint: %zu, n: %zu, seed: %" PRIu64 ", h: %.12g\n", constraint, n, seed, h);
    for (size_t j = 0; j < d; ++j) {
        std::printf("component %zu:\n", j + 1);
        std::printf("  estimator_mean: %.12g (stderr %.12g)\n", est[j], est_se[j]);
        std::printf("  oracle_grad:    %.12g (stderr %.12g)\n", ora[j], ora_se[j]);
        std::printf("  gap:            %.12g (stderr %.12g)\n", gap[j], gap_se[j]);
    }
    return 0;
}

int cmd_sgd(const std::string& path, double mu, const std::string& x0_text, double step_size,
            size_t steps, size_t batch, double delta, uint64_t seed,
            const std::string& estimator, const std::string& out_path) {
    InstancePtr inst = load_instance(path);
    const size_t d = brx_instance_cols(inst.get());
    const std::vector<double> x0 = parse_point(x0_text, d, "--x0");

    brx_sgd_config cfg;
    cfg.step_size = step_size;
    cfg.steps = steps;
    cfg.batch = batch;
    cfg.delta = delta;
    cfg.seed = seed;
    if (estimator == "pathwise") cfg.estimator = BRX_ESTIMATOR_PATHWISE;
    else if (estimator == "corrected-1d") cfg.estimator = BRX_ESTIMATOR_PATHWISE_CORRECTED_1D;
    else if (estimator == "exact") cfg.estimator = BRX_ESTIMATOR_EXACT_PENALTY;
    else {
        std::fprintf(stderr, "error: --estimator must be pathwise, corrected-1d or exact\n");
        return 1;
    }

    brx_trajectory* raw = nullptr;
    check(brx_sgd_run(inst.get(), mu, x0.data(), &cfg, &raw), "sgd");
    std::unique_ptr<brx_trajectory, decltype(&brx_trajectory_free)> traj(raw,
                                                                         &brx_trajectory_free);
    if (!out_path.empty())
        check(brx_trajectory_save_csv(traj.get(), out_path.c_str()), out_path);

    std::vector<double> terminal(d);
    check(brx_trajectory_terminal(traj.get(), terminal.data()), "sgd");
    std::printf("steps: %zu\nterminal:", steps);
    for (double v : terminal) std::printf(" %.12g", v);
    std::printf("\nterminal_objective: %.12g\n", brx_trajectory_terminal_objective(traj.get()));
    if (!out_path.empty()) std::printf("trajectory: %s\n", out_path.c_str());
    return 0;
}

int cmd_circulation(double a1, double a2, double b, const std::string& center_text, double radius,
                    size_t points_per_edge) {
    const std::vector<double> center = parse_point(center_text, 2, "--center");
    double loop_estimator = 0, loop_gradient = 0;
    check(brx_circulation_2d(a1, a2, b, BRX_FIELD_ESTIMATOR_MEAN, center[0], center[1], radius,
                             points_per_edge, &loop_estimator),
          "circulation");
    check(brx_circulation_2d(a1, a2, b, BRX_FIELD_POTENTIAL_GRADIENT, center[0], center[1],
                             radius, points_per_edge, &loop_gradient),
          "circulation");
    std::printf("loop_integral_estimator_field: %.12g\n", loop_estimator);
    std::printf("loop_integral_potential_gradient: %.12g\n", loop_gradient);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"brx — exact and Monte-Carlo diagnostics for penalized Bernoulli "
                 "relaxations of 0-1 linear programs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", brx_version());
    argv = app.ensure_utf8(argv);

    std::string instance_path, out_path, xhat_text = "0.5", x0_text = "0.9";
    std::string estimator = "pathwise", center_text = "0.5,0.5";
    double a = 1.0, b = 0.95, a1 = 1.0, a2 = 1.0, b2 = 1.5;
    double mu = 1.0, step_size = 0.05, delta = 1e-7, h = 1e-3, radius = 0.2;
    size_t resolution = 999, n = 1'000'000, steps = 2000, batch = 32, constraint = 0;
    size_t points_per_edge = 4000;
    uint64_t seed = 1;

    auto* solve = app.add_subcommand("solve", "enumerate all optima of a 0-1 instance");
    solve->add_option("instance", instance_path, "instance file (JSON)")->required();

    auto* threshold =
        app.add_subcommand("threshold", "penalty weight above which the penalized and "
                                        "constrained minimizers coincide");
    threshold->add_option("instance", instance_path, "instance file (JSON)")->required();

    auto* curves = app.add_subcommand(
        "curves-1d", "table of the 1D closed forms over [0.001, 0.999]: f1, expected "
                     "surrogate, effective potential, mean estimator, exact expected violation");
    curves->add_option("--a", a, "constraint coefficient (a > 0)")->capture_default_str();
    curves->add_option("--b", b, "constraint bound")->capture_default_str();
    curves->add_option("--resolution", resolution, "number of rows")->capture_default_str();
    curves->add_option("--out", out_path, "output file (default: stdout)");

    auto* field = app.add_subcommand(
        "field-2d", "table of the 2D mean-estimator field and its curl on a grid");
    field->add_option("--a1", a1, "first coefficient")->capture_default_str();
    field->add_option("--a2", a2, "second coefficient")->capture_default_str();
    field->add_option("--b", b2, "bound (a1 + a2 > b >= a1 >= a2 > 0)")->capture_default_str();
    field->add_option("--resolution", resolution, "grid points per axis")
        ->capture_default_str();
    field->add_option("--out", out_path, "output file (default: stdout)");

    auto* bias = app.add_subcommand(
        "bias", "estimator mean vs CRN finite-difference gradient of the expected surrogate");
    bias->add_option("instance", instance_path, "instance file (JSON)")->required();
    bias->add_option("--xhat", xhat_text, "evaluation point, comma-separated (scalar broadcasts)")
        ->capture_default_str();
    bias->add_option("--constraint", constraint, "constraint index")->capture_default_str();
    bias->add_option("--n", n, "Monte-Carlo samples")->capture_default_str();
    bias->add_option("--seed", seed, "noise seed")->capture_default_str();
    bias->add_option("--fd-step", h, "finite-difference step")->capture_default_str();

    auto* sgd = app.add_subcommand("sgd", "projected stochastic gradient run");
    sgd->add_option("instance", instance_path, "instance file (JSON)")->required();
    sgd->add_option("--mu", mu, "penalty weight")->capture_default_str();
    sgd->add_option("--x0", x0_text, "start point, comma-separated (scalar broadcasts)")
        ->capture_default_str();
    sgd->add_option("--step-size", step_size, "fixed step size")->capture_default_str();
    sgd->add_option("--steps", steps, "iterations")->capture_default_str();
    sgd->add_option("--batch", batch, "gradient samples per step")->capture_default_str();
    sgd->add_option("--delta", delta, "projection box [delta, 1-delta]")->capture_default_str();
    sgd->add_option("--seed", seed, "noise seed")->capture_default_str();
    sgd->add_option("--estimator", estimator, "pathwise | corrected-1d | exact")
        ->capture_default_str();
    sgd->add_option("--out", out_path, "trajectory CSV file");

    auto* circ = app.add_subcommand(
        "circulation", "square-loop line integrals of the mean-estimator field and of the "
                       "potential gradient");
    circ->add_option("--a1", a1, "first coefficient")->capture_default_str();
    circ->add_option("--a2", a2, "second coefficient")->capture_default_str();
    circ->add_option("--b", b2, "bound (a1 + a2 > b >= a1 >= a2 > 0)")->capture_default_str();
    circ->add_option("--center", center_text, "loop center \"x,y\"")->capture_default_str();
    circ->add_option("--radius", radius, "half side of the square")->capture_default_str();
    circ->add_option("--n", points_per_edge, "integration points per edge")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) return cmd_solve(instance_path);
    if (threshold->parsed()) return cmd_threshold(instance_path);
    if (curves->parsed()) return cmd_curves_1d(a, b, resolution, out_path);
    if (field->parsed()) return cmd_field_2d(a1, a2, b2, resolution, out_path);
    if (bias->parsed()) return cmd_bias(instance_path, xhat_text, constraint, n, seed, h);
    if (sgd->parsed())
        return cmd_sgd(instance_path, mu, x0_text, step_size, steps, batch, delta, seed,
                       estimator, out_path);
    if (circ->parsed())
        return cmd_circulation(a1, a2, b2, center_text, radius, points_per_edge);
    return 1;
}
