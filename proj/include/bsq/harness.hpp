#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsq/snapshot.hpp"
#include "bsq/sponge.hpp"
#include "bsq/stationary.hpp"
#include "bsq/time_solver.hpp"

namespace bsq {

/// Region where the paired solutions are compared; must sit inside the
/// sponge plateau.
struct ComparisonWindow {
    double x_min = -80.0;
    double x_max = 80.0;
};

struct ErrorSeries {
    RealVector times;
    RealVector values;
};

/// ||eta_nosponge - eta_sponge||_2 / ||eta_sponge||_2 over the grid points the
/// two snapshots share inside the window. Both snapshots must use the same dx.
/// Returns 0 when both are identically zero on the window.
double relative_error(const Snapshot& nosponge, const Snapshot& sponge, const ComparisonWindow& window = {});

/// max |eta| over [x_min, x_max] for each snapshot.
std::pair<RealVector, RealVector> amplitude_series(const std::vector<Snapshot>& snapshots, double x_min,
                                                   double x_max);

/// max |eta| over the points where s(x) < -a1/2.
double boundary_activity(std::span<const double> eta, const SpongeProfile& sponge);
double boundary_activity(const Snapshot& snapshot, const SpongeProfile& sponge);

/// Same as boundary_activity restricted to x < 0 (the left, inflow, end).
double left_boundary_activity(const Snapshot& snapshot, const SpongeProfile& sponge);

/// Copies values onto another grid with the same dx, matching coordinates;
/// points outside the source grid become zero.
RealVector embed_on_grid(const Grid& from, std::span<const double> values, const Grid& to);

enum class ScenarioKind { traveling_wave, trapped_waves, current_topography, custom };
enum class FroudeMode { stationary, trapped_offset, fixed };
enum class InitialKind { zero, stationary, file };

std::string to_string(ScenarioKind kind);

/// Flat `key = value` configuration for one paired experiment.
struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::traveling_wave;
    int n_sponge = 1024;
    int n_nosponge = 1024;
    double dx = 0.2;
    double dt = 0.01;
    double t_final = 352.0;
    double snapshot_interval = 8.8;
    double alpha = 0.01;
    double beta = 0.01;
    double epsilon = 0.01;
    double amplitude = 0.44;
    double offset_c0 = 0.04;
    FroudeMode froude_mode = FroudeMode::stationary;
    double froude = 0.0;  ///< used when froude_mode == fixed
    double sponge_a1 = 10.0;
    double sponge_margin = 12.4;
    TopographyKind topography = TopographyKind::none;
    std::optional<double> a0;                ///< defaults to epsilon^2
    double b0 = 20.0;
    std::optional<double> topography_scale;  ///< defaults to epsilon
    ComparisonWindow window;
    std::optional<std::pair<double, double>> amplitude_region;
    InitialKind initial = InitialKind::stationary;
    std::filesystem::path initial_file;
    double newton_tol = 1e-10;
    int newton_max_iter = 100;
    double fd_step = 1e-10;
    bool sponge = true;  ///< single-run `evolve` only

    static ScenarioConfig defaults(ScenarioKind kind);

    PhysicalParams params() const { return PhysicalParams{alpha, beta, epsilon, 0.0}; }
    TopographySpec topography_spec() const;
    std::pair<double, double> region() const;
    void validate() const;
};

ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

struct ScenarioCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RunResult {
    std::vector<Snapshot> snapshots;
    RealVector amplitude;         ///< max |eta| over the amplitude region
    RealVector boundary;          ///< boundary_activity per snapshot
    RealVector boundary_left;     ///< left_boundary_activity per snapshot
    RealVector peak_location;     ///< x of max |eta| over the whole grid
    EvolutionStats stats;
};

struct ScenarioResult {
    ScenarioConfig config;
    std::optional<StationarySolution> stationary;
    double froude = 0.0;
    SpongeProfile sponge;  ///< profile on the sponge grid
    SpongeProfile nosponge_mask;  ///< same shape on the no-sponge grid, used only to measure activity
    RunResult with_sponge;
    RunResult without_sponge;
    ErrorSeries errors;
    std::vector<ScenarioCheck> checks;

    bool all_passed() const;
};

using ProgressCallback = std::function<void(const std::string&)>;

/// Solves for the stationary wave when needed, runs the sponge and no-sponge
/// evolutions, and computes every diagnostic. When `out_dir` is set, writes
/// snapshots and CSV/report files there.
ScenarioResult run_scenario(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out_dir = {},
                            const ProgressCallback& progress = {});

/// Single evolution from a scenario-style configuration (grid n_sponge,
/// sponge on/off from `config.sponge`). Writes one snapshot file per
/// interval into `out_dir`.
std::vector<Snapshot> run_single(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out_dir = {},
                                 const ProgressCallback& progress = {});

void write_series_csv(const std::filesystem::path& path, const std::string& value_name, const RealVector& times,
                      const RealVector& values);

/// Number of strict interior local maxima and minima in a series.
std::pair<int, int> count_local_extrema(const RealVector& values);

}  // namespace bsq
