#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>

#include "bsq/harness.hpp"
#include "bsq/snapshot.hpp"
#include "bsq/sponge.hpp"
#include "bsq/stationary.hpp"

namespace {

int run_stationary(double amplitude, double alpha, double beta, int n, double dx, const std::string& out,
                   const bsq::NewtonOptions& options) {
    const bsq::Grid grid(n, dx);
    const bsq::PhysicalParams params{alpha, beta, alpha, 0.0};
    auto opts = options;
    opts.on_iterate = [](const bsq::NewtonIterate& it) {
        std::cerr << "iteration " << it.iteration << "  residual " << it.residual << '\n';
    };
    const auto solution = bsq::newton_solve(bsq::kdv_initial_guess(amplitude, params, grid), amplitude, params,
                                            grid, opts);
    bsq::Snapshot snap;
    snap.n = n;
    snap.dx = dx;
    snap.alpha = alpha;
    snap.beta = beta;
    snap.froude = solution.froude;
    snap.stationary = true;
    snap.amplitude = solution.amplitude;
    snap.residual = solution.residual;
    snap.iterations = solution.iterations;
    snap.x = grid.points();
    snap.eta = solution.eta;
    snap.u = solution.u;
    bsq::write_snapshot(std::filesystem::path(out), snap);
    std::cout << "froude=" << bsq::format_double(solution.froude) << " residual=" << solution.residual
              << " iterations=" << solution.iterations << '\n';
    return 0;
}

int run_oracle(double b, double t, const std::string& profile, double x_min, double x_max, double step) {
    if (profile != "gaussian") throw CLI::ValidationError("--profile", "only 'gaussian' is supported");
    bsq::DampedWaveProblem problem{[](double x) { return std::exp(-x * x); }, [](double) { return 0.0; }, b};
    std::cout << "x,eta\n";
    const long count = std::lround((x_max - x_min) / step);
    for (long i = 0; i <= count; ++i) {
        const double x = x_min + i * step;
        std::cout << bsq::format_double(x) << ',' << bsq::format_double(bsq::damped_wave_exact(problem, x, t)) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boussinesq equations with a sponge layer: stationary waves, evolution and paired comparisons"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "Suppress progress output");

    auto* stationary = app.add_subcommand("stationary", "Solve for a stationary solitary wave");
    double amplitude = 0.44, alpha = 0.01, beta = 0.01, dx = 0.2;
    int n = 1024;
    std::string out;
    bsq::NewtonOptions newton;
    stationary->add_option("--amplitude", amplitude, "Pinned amplitude A")->capture_default_str();
    stationary->add_option("--alpha", alpha)->capture_default_str();
    stationary->add_option("--beta", beta)->capture_default_str();
    stationary->add_option("--n", n, "Grid points (even)")->capture_default_str();
    stationary->add_option("--dx", dx)->capture_default_str();
    stationary->add_option("--tol", newton.tol)->capture_default_str();
    stationary->add_option("--max-iter", newton.max_iter)->capture_default_str();
    stationary->add_option("--fd-step", newton.fd_step, "Finite-difference step for the Jacobian")
        ->capture_default_str();
    stationary->add_option("--out", out, "Snapshot file to write")->required();

    std::string config_path, out_dir;
    auto* evolve = app.add_subcommand("evolve", "Run one evolution from a config file");
    evolve->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
    evolve->add_option("--out", out_dir)->required();

    auto* compare = app.add_subcommand("compare", "Run paired sponge / no-sponge evolutions with diagnostics");
    compare->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
    compare->add_option("--out", out_dir)->required();

    auto* oracle = app.add_subcommand("oracle", "Print the damped wave equation solution as CSV");
    double b = 0.0, t = 0.0, x_min = -10.0, x_max = 10.0, step = 0.5;
    std::string profile = "gaussian";
    oracle->add_option("--b", b, "Constant damping")->required();
    oracle->add_option("--t", t, "Time")->required();
    oracle->add_option("--profile", profile)->capture_default_str();
    oracle->add_option("--x-min", x_min)->capture_default_str();
    oracle->add_option("--x-max", x_max)->capture_default_str();
    oracle->add_option("--step", step)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    const bsq::ProgressCallback progress = [quiet](const std::string& msg) {
        if (!quiet) std::cerr << msg << '\n';
    };

    try {
        if (*stationary) return run_stationary(amplitude, alpha, beta, n, dx, out, newton);
        if (*oracle) return run_oracle(b, t, profile, x_min, x_max, step);
        const auto config = bsq::load_scenario_config(config_path);
        if (*evolve) {
            const auto snaps = bsq::run_single(config, std::filesystem::path(out_dir), progress);
            std::cout << "wrote " << snaps.size() << " snapshots to " << out_dir << '\n';
            return 0;
        }
        if (*compare) {
            const auto result = bsq::run_scenario(config, std::filesystem::path(out_dir), progress);
            for (const auto& check : result.checks) {
                std::cout << (check.passed ? "PASS  " : "FAIL  ") << check.name << "  " << check.detail << '\n';
            }
            return result.all_passed() ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
