#include "bsq/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace bsq {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct Entry {
    std::string value;
    int line = 0;
};

[[noreturn]] void config_fail(int line, const std::string& message) {
    throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double to_double(const Entry& e) {
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0') config_fail(e.line, "expected a number, got '" + e.value + "'");
    return v;
}

int to_int(const Entry& e) {
    const double v = to_double(e);
    if (v != std::floor(v) || std::abs(v) > 1e9) config_fail(e.line, "expected an integer, got '" + e.value + "'");
    return static_cast<int>(v);
}

bool to_bool(const Entry& e) {
    if (e.value == "1" || e.value == "true" || e.value == "yes" || e.value == "on") return true;
    if (e.value == "0" || e.value == "false" || e.value == "no" || e.value == "off") return false;
    config_fail(e.line, "expected a boolean, got '" + e.value + "'");
}

std::pair<double, double> to_interval(const Entry& e) {
    const auto comma = e.value.find(',');
    if (comma == std::string::npos) config_fail(e.line, "expected 'min,max', got '" + e.value + "'");
    Entry lo{trim(e.value.substr(0, comma)), e.line};
    Entry hi{trim(e.value.substr(comma + 1)), e.line};
    const auto interval = std::make_pair(to_double(lo), to_double(hi));
    if (!(interval.first < interval.second)) config_fail(e.line, "interval must satisfy min < max");
    return interval;
}

ScenarioKind to_scenario(const Entry& e) {
    if (e.value == "traveling_wave") return ScenarioKind::traveling_wave;
    if (e.value == "trapped_waves") return ScenarioKind::trapped_waves;
    if (e.value == "current_topography") return ScenarioKind::current_topography;
    if (e.value == "custom") return ScenarioKind::custom;
    config_fail(e.line, "unknown scenario '" + e.value + "'");
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Snapshot make_snapshot(const Grid& grid, const WaveState& state, const PhysicalParams& params, bool sponge) {
    Snapshot s;
    s.n = grid.size();
    s.dx = grid.dx();
    s.time = state.time;
    s.alpha = params.alpha;
    s.beta = params.beta;
    s.froude = params.froude;
    s.sponge = sponge;
    s.x = grid.points();
    s.eta = state.eta;
    s.u = state.u;
    return s;
}

double peak_location(const Snapshot& s) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < s.eta.size(); ++j) {
        if (std::abs(s.eta[j]) > std::abs(s.eta[best])) best = j;
    }
    return s.x[best];
}

std::string format_check(const ScenarioCheck& c) {
    return std::string(c.passed ? "PASS" : "FAIL") + "  " + c.name + "  " + c.detail;
}

}  // namespace

double relative_error(const Snapshot& nosponge, const Snapshot& sponge, const ComparisonWindow& window) {
    if (nosponge.dx != sponge.dx) throw std::invalid_argument("relative_error: snapshots use different dx");
    if (!(window.x_min < window.x_max)) throw std::invalid_argument("relative_error: empty window");
    const Grid other = nosponge.grid();
    double diff_sq = 0.0;
    double ref_sq = 0.0;
    std::size_t matched = 0;
    for (std::size_t j = 0; j < sponge.x.size(); ++j) {
        const double x = sponge.x[j];
        if (x < window.x_min || x > window.x_max) continue;
        const int i = other.index_of(x);
        if (i < 0 || std::abs(nosponge.x[i] - x) > 1e-12) {
            throw std::invalid_argument("relative_error: window point missing from the no-sponge grid");
        }
        const double d = nosponge.eta[i] - sponge.eta[j];
        diff_sq += d * d;
        ref_sq += sponge.eta[j] * sponge.eta[j];
        ++matched;
    }
    if (matched == 0) throw std::invalid_argument("relative_error: window contains no grid points");
    const double numerator = std::sqrt(diff_sq);
    const double denominator = std::sqrt(ref_sq);
    if (denominator == 0.0) {
        if (numerator < 1e-14) return 0.0;
        throw std::domain_error("relative_error: sponge solution vanishes on the window");
    }
    return numerator / denominator;
}

std::pair<RealVector, RealVector> amplitude_series(const std::vector<Snapshot>& snapshots, double x_min,
                                                   double x_max) {
    RealVector times, amax;
    times.reserve(snapshots.size());
    amax.reserve(snapshots.size());
    for (const auto& s : snapshots) {
        double m = 0.0;
        for (std::size_t j = 0; j < s.x.size(); ++j) {
            if (s.x[j] >= x_min && s.x[j] <= x_max) m = std::max(m, std::abs(s.eta[j]));
        }
        times.push_back(s.time);
        amax.push_back(m);
    }
    return {times, amax};
}

double boundary_activity(std::span<const double> eta, const SpongeProfile& sponge) {
    if (eta.size() != sponge.samples.size()) throw std::invalid_argument("boundary_activity: size mismatch");
    const double threshold = -0.5 * sponge.a1;
    double m = 0.0;
    for (std::size_t j = 0; j < eta.size(); ++j) {
        if (sponge.samples[j] < threshold) m = std::max(m, std::abs(eta[j]));
    }
    return m;
}

double boundary_activity(const Snapshot& snapshot, const SpongeProfile& sponge) {
    return boundary_activity(snapshot.eta, sponge);
}

double left_boundary_activity(const Snapshot& snapshot, const SpongeProfile& sponge) {
    if (snapshot.eta.size() != sponge.samples.size()) throw std::invalid_argument("boundary_activity: size mismatch");
    const double threshold = -0.5 * sponge.a1;
    double m = 0.0;
    for (std::size_t j = 0; j < snapshot.eta.size(); ++j) {
        if (snapshot.x[j] < 0.0 && sponge.samples[j] < threshold) m = std::max(m, std::abs(snapshot.eta[j]));
    }
    return m;
}

RealVector embed_on_grid(const Grid& from, std::span<const double> values, const Grid& to) {
    if (from.dx() != to.dx()) throw std::invalid_argument("embed_on_grid: grids must share dx");
    if (static_cast<int>(values.size()) != from.size()) throw std::invalid_argument("embed_on_grid: size mismatch");
    RealVector out(to.size(), 0.0);
    const int shift = from.size() / 2 - to.size() / 2;
    for (int j = 0; j < to.size(); ++j) {
        const int i = j + shift;
        if (i >= 0 && i < from.size()) out[j] = values[i];
    }
    return out;
}

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::traveling_wave: return "traveling_wave";
        case ScenarioKind::trapped_waves: return "trapped_waves";
        case ScenarioKind::current_topography: return "current_topography";
        case ScenarioKind::custom: return "custom";
    }
    return "unknown";
}

ScenarioConfig ScenarioConfig::defaults(ScenarioKind kind) {
    ScenarioConfig c;
    c.scenario = kind;
    switch (kind) {
        case ScenarioKind::traveling_wave:
        case ScenarioKind::custom:
            break;
        case ScenarioKind::trapped_waves:
            c.n_sponge = 1 << 10;
            c.n_nosponge = 1 << 13;
            c.t_final = 1e4;
            c.snapshot_interval = 50.0;
            c.froude_mode = FroudeMode::trapped_offset;
            c.topography = TopographyKind::gaussian_pair;
            c.b0 = 20.0;
            break;
        case ScenarioKind::current_topography:
            c.n_sponge = 1 << 12;
            c.n_nosponge = 1 << 12;
            c.dx = 0.1;
            c.t_final = 2000.0;
            c.snapshot_interval = 50.0;
            c.froude_mode = FroudeMode::fixed;
            c.froude = 1.0;
            c.topography = TopographyKind::gaussian;
            c.initial = InitialKind::zero;
            break;
    }
    return c;
}

TopographySpec ScenarioConfig::topography_spec() const {
    TopographySpec spec;
    spec.kind = topography;
    spec.a0 = a0.value_or(epsilon * epsilon);
    spec.b0 = b0;
    spec.scale = topography_scale.value_or(epsilon);
    return spec;
}

std::pair<double, double> ScenarioConfig::region() const {
    if (amplitude_region) return *amplitude_region;
    if (scenario == ScenarioKind::trapped_waves) return {-b0, b0};
    return {window.x_min, window.x_max};
}

void ScenarioConfig::validate() const {
    params().validate();
    Grid(n_sponge, dx);
    Grid(n_nosponge, dx);
    if (sponge_a1 < 0.0) throw ConfigError("sponge_a1 must be non-negative");
    if (!(window.x_min < window.x_max)) throw ConfigError("window must satisfy x_min < x_max");
    if (amplitude < 0.0) throw ConfigError("amplitude must be non-negative");
    if (initial == InitialKind::zero && froude_mode != FroudeMode::fixed) {
        throw ConfigError("zero initial data needs froude_mode = fixed");
    }
}

ScenarioConfig parse_scenario_config(std::istream& in) {
    std::map<std::string, Entry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) config_fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) config_fail(line_no, "expected 'key = value'");
        if (entries.count(key)) config_fail(line_no, "duplicate key '" + key + "'");
        entries[key] = Entry{value, line_no};
    }

    ScenarioKind kind = ScenarioKind::custom;
    if (auto it = entries.find("scenario"); it != entries.end()) kind = to_scenario(it->second);
    ScenarioConfig c = ScenarioConfig::defaults(kind);

    for (const auto& [key, e] : entries) {
        if (key == "scenario") {
            continue;
        } else if (key == "n") {
            c.n_sponge = c.n_nosponge = to_int(e);
        } else if (key == "n_sponge") {
            c.n_sponge = to_int(e);
        } else if (key == "n_nosponge") {
            c.n_nosponge = to_int(e);
        } else if (key == "dx") {
            c.dx = to_double(e);
        } else if (key == "dt") {
            c.dt = to_double(e);
        } else if (key == "t_final") {
            c.t_final = to_double(e);
        } else if (key == "snapshot_interval") {
            c.snapshot_interval = to_double(e);
        } else if (key == "alpha") {
            c.alpha = to_double(e);
        } else if (key == "beta") {
            c.beta = to_double(e);
        } else if (key == "epsilon") {
            c.epsilon = to_double(e);
        } else if (key == "amplitude") {
            c.amplitude = to_double(e);
        } else if (key == "offset_c0") {
            c.offset_c0 = to_double(e);
        } else if (key == "froude_mode") {
            if (e.value == "stationary") {
                c.froude_mode = FroudeMode::stationary;
            } else if (e.value == "trapped_offset") {
                c.froude_mode = FroudeMode::trapped_offset;
            } else if (e.value == "fixed") {
                c.froude_mode = FroudeMode::fixed;
            } else {
                config_fail(e.line, "froude_mode must be stationary, trapped_offset or fixed");
            }
        } else if (key == "froude") {
            c.froude = to_double(e);
        } else if (key == "sponge_a1") {
            c.sponge_a1 = to_double(e);
        } else if (key == "sponge_margin") {
            c.sponge_margin = to_double(e);
        } else if (key == "sponge") {
            c.sponge = to_bool(e);
        } else if (key == "topography") {
            if (e.value == "none") {
                c.topography = TopographyKind::none;
            } else if (e.value == "gaussian_pair") {
                c.topography = TopographyKind::gaussian_pair;
            } else if (e.value == "gaussian") {
                c.topography = TopographyKind::gaussian;
            } else {
                config_fail(e.line, "topography must be none, gaussian_pair or gaussian");
            }
        } else if (key == "a0") {
            c.a0 = to_double(e);
        } else if (key == "b0") {
            c.b0 = to_double(e);
        } else if (key == "topography_scale") {
            c.topography_scale = to_double(e);
        } else if (key == "window") {
            const auto [lo, hi] = to_interval(e);
            c.window = ComparisonWindow{lo, hi};
        } else if (key == "amplitude_region") {
            c.amplitude_region = to_interval(e);
        } else if (key == "initial") {
            if (e.value == "zero") {
                c.initial = InitialKind::zero;
            } else if (e.value == "stationary") {
                c.initial = InitialKind::stationary;
            } else {
                c.initial = InitialKind::file;
                c.initial_file = e.value;
            }
        } else if (key == "newton_tol") {
            c.newton_tol = to_double(e);
        } else if (key == "newton_max_iter") {
            c.newton_max_iter = to_int(e);
        } else if (key == "fd_step") {
            c.fd_step = to_double(e);
        } else {
            config_fail(e.line, "unknown key '" + key + "'");
        }
    }
    c.validate();
    return c;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    auto config = parse_scenario_config(in);
    if (config.initial == InitialKind::file && config.initial_file.is_relative()) {
        config.initial_file = path.parent_path() / config.initial_file;
    }
    return config;
}

bool ScenarioResult::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ScenarioCheck& c) { return c.passed; });
}

void write_series_csv(const std::filesystem::path& path, const std::string& value_name, const RealVector& times,
                      const RealVector& values) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "t," << value_name << '\n';
    for (std::size_t i = 0; i < times.size(); ++i) {
        out << format_double(times[i]) << ',' << format_double(values[i]) << '\n';
    }
}

std::pair<int, int> count_local_extrema(const RealVector& values) {
    int maxima = 0;
    int minima = 0;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] > values[i - 1] && values[i] > values[i + 1]) ++maxima;
        if (values[i] < values[i - 1] && values[i] < values[i + 1]) ++minima;
    }
    return {maxima, minima};
}

namespace {

struct InitialData {
    Grid grid;
    RealVector eta;
    RealVector u;
    std::optional<double> froude;
};

InitialData prepare_initial(const ScenarioConfig& config, const Grid& solve_grid,
                            std::optional<StationarySolution>& stationary, const ProgressCallback& progress) {
    switch (config.initial) {
        case InitialKind::zero:
            return {solve_grid, RealVector(solve_grid.size(), 0.0), RealVector(solve_grid.size(), 0.0), std::nullopt};
        case InitialKind::stationary: {
            if (progress) progress("solving for the stationary wave on n=" + std::to_string(solve_grid.size()));
            const PhysicalParams params = config.params();
            NewtonOptions options;
            options.tol = config.newton_tol;
            options.max_iter = config.newton_max_iter;
            options.fd_step = config.fd_step;
            stationary = newton_solve(kdv_initial_guess(config.amplitude, params, solve_grid), config.amplitude,
                                      params, solve_grid, options);
            if (progress) {
                std::ostringstream msg;
                msg << "stationary wave: F = " << format_double(stationary->froude) << ", residual "
                    << stationary->residual << " after " << stationary->iterations << " iterations";
                progress(msg.str());
            }
            return {solve_grid, stationary->eta, stationary->u, stationary->froude};
        }
        case InitialKind::file: {
            const Snapshot s = read_snapshot(config.initial_file);
            if (s.dx != config.dx) throw ConfigError("initial file uses a different dx than the config");
            std::optional<double> froude;
            if (s.stationary) froude = s.froude;
            return {s.grid(), s.eta, s.u, froude};
        }
    }
    throw ConfigError("unsupported initial data");
}

double resolve_froude(const ScenarioConfig& config, const std::optional<double>& base) {
    switch (config.froude_mode) {
        case FroudeMode::fixed:
            return config.froude;
        case FroudeMode::stationary:
            if (!base) throw ConfigError("froude_mode = stationary needs stationary initial data");
            return *base;
        case FroudeMode::trapped_offset:
            if (!base) throw ConfigError("froude_mode = trapped_offset needs stationary initial data");
            return *base - config.offset_c0 * config.epsilon;
    }
    throw ConfigError("unsupported froude mode");
}

RunResult run_one(const ScenarioConfig& config, const Grid& grid, const InitialData& init, double froude,
                  const std::optional<SpongeProfile>& sponge, const SpongeProfile& mask,
                  const std::optional<std::filesystem::path>& dir, const ProgressCallback& progress,
                  const std::string& label) {
    EvolutionConfig ev{};
    ev.params = config.params();
    ev.params.froude = froude;
    ev.grid = grid;
    ev.dt = config.dt;
    ev.t_final = config.t_final;
    ev.snapshot_interval = config.snapshot_interval;
    ev.sponge = sponge;
    ev.forcing.topography = config.topography == TopographyKind::none
                                ? RealVector{}
                                : make_topography(config.topography_spec(), grid);
    ev.initial.eta = embed_on_grid(init.grid, init.eta, grid);
    ev.initial.u = embed_on_grid(init.grid, init.u, grid);
    ev.initial.time = 0.0;

    if (dir) std::filesystem::create_directories(*dir);
    const auto [region_lo, region_hi] = config.region();
    RunResult result;
    long index = 0;
    result.stats = evolve(ev, [&](const WaveState& state) {
        Snapshot snap = make_snapshot(grid, state, ev.params, sponge.has_value());
        double amax = 0.0;
        for (int j = 0; j < grid.size(); ++j) {
            if (snap.x[j] >= region_lo && snap.x[j] <= region_hi) amax = std::max(amax, std::abs(snap.eta[j]));
        }
        result.amplitude.push_back(amax);
        result.boundary.push_back(boundary_activity(snap, mask));
        result.boundary_left.push_back(left_boundary_activity(snap, mask));
        result.peak_location.push_back(peak_location(snap));
        if (dir) write_snapshot(*dir / snapshot_filename(index), snap);
        ++index;
        if (progress) {
            std::ostringstream msg;
            msg << label << " t=" << state.time << " max|eta|=" << max_abs(snap.eta);
            progress(msg.str());
        }
        result.snapshots.push_back(std::move(snap));
    });
    return result;
}

void add_scenario_checks(ScenarioResult& r) {
    const auto& c = r.config;
    auto& checks = r.checks;
    const auto& s = r.with_sponge;
    const auto& ns = r.without_sponge;
    switch (c.scenario) {
        case ScenarioKind::traveling_wave: {
            const double max_e = *std::max_element(r.errors.values.begin(), r.errors.values.end());
            checks.push_back({"max_relative_error < 1e-9", max_e < 1e-9, "max E = " + format_double(max_e)});
            for (const auto* run : {&s, &ns}) {
                const auto& first = run->snapshots.front().eta;
                const auto& last = run->snapshots.back().eta;
                double drift = 0.0;
                for (std::size_t j = 0; j < first.size(); ++j) drift = std::max(drift, std::abs(last[j] - first[j]));
                const std::string which = run == &s ? "sponge" : "no-sponge";
                checks.push_back({"profile drift < 1e-9 (" + which + ")", drift < 1e-9,
                                  "max |eta(T) - eta(0)| = " + format_double(drift)});
            }
            break;
        }
        case ScenarioKind::trapped_waves: {
            const double horizon = 1e4;
            for (const auto* run : {&s, &ns}) {
                double worst = 0.0;
                for (std::size_t i = 0; i < run->snapshots.size(); ++i) {
                    if (run->snapshots[i].time > horizon) break;
                    worst = std::max(worst, std::abs(run->peak_location[i]));
                }
                const std::string which = run == &s ? "sponge" : "no-sponge";
                checks.push_back({"peak stays within [-b0, b0] (" + which + ")", worst <= c.b0,
                                  "max |x_peak| = " + format_double(worst)});
            }
            RealVector confined;
            for (std::size_t i = 0; i < s.snapshots.size() && s.snapshots[i].time <= horizon; ++i) {
                confined.push_back(s.amplitude[i]);
            }
            const auto [maxima, minima] = count_local_extrema(confined);
            checks.push_back({"amplitude rises and falls during confinement", maxima >= 1 && minima >= 1,
                              std::to_string(maxima) + " local maxima, " + std::to_string(minima) + " local minima"});
            break;
        }
        case ScenarioKind::current_topography: {
            const double worst = *std::max_element(s.boundary.begin(), s.boundary.end());
            checks.push_back({"sponge boundary activity < 1e-4", worst < 1e-4,
                              "max activity = " + format_double(worst)});
            // Downstream front moves at roughly F + 1 and wraps around after
            // covering the half-length.
            const double transit = 0.5 * c.n_nosponge * c.dx / (std::abs(r.froude) + 1.0);
            double reentry = 0.0;
            for (std::size_t i = 0; i < ns.snapshots.size(); ++i) {
                if (ns.snapshots[i].time >= transit) reentry = std::max(reentry, ns.boundary_left[i]);
            }
            checks.push_back({"no-sponge signal re-enters at the inflow boundary", reentry > 1e-5,
                              "max left-boundary |eta| after t=" + format_double(transit) + " is " +
                                  format_double(reentry)});
            break;
        }
        case ScenarioKind::custom:
            break;
    }
}

void write_outputs(const ScenarioResult& r, const std::filesystem::path& dir) {
    write_series_csv(dir / "errors.csv", "E", r.errors.times, r.errors.values);
    write_series_csv(dir / "amplitude.csv", "amax", r.errors.times, r.with_sponge.amplitude);
    write_series_csv(dir / "amplitude_nosponge.csv", "amax", r.errors.times, r.without_sponge.amplitude);
    write_series_csv(dir / "boundary.csv", "activity", r.errors.times, r.with_sponge.boundary);
    write_series_csv(dir / "boundary_nosponge.csv", "activity", r.errors.times, r.without_sponge.boundary);
    if (r.stationary) {
        Snapshot st = make_snapshot(Grid(r.config.n_sponge, r.config.dx),
                                    WaveState{r.stationary->eta, r.stationary->u, 0.0}, r.config.params(), false);
        st.froude = r.stationary->froude;
        st.stationary = true;
        st.amplitude = r.stationary->amplitude;
        st.residual = r.stationary->residual;
        st.iterations = r.stationary->iterations;
        write_snapshot(dir / "stationary.dat", st);
    }
    std::ofstream report(dir / "report.txt");
    report << "scenario: " << to_string(r.config.scenario) << '\n';
    report << "n_sponge: " << r.config.n_sponge << "  n_nosponge: " << r.config.n_nosponge
           << "  dx: " << format_double(r.config.dx) << '\n';
    report << "froude: " << format_double(r.froude) << '\n';
    report << "sponge: a1=" << format_double(r.sponge.a1) << " edges=[" << format_double(r.sponge.x_left) << ", "
           << format_double(r.sponge.x_right) << "]\n";
    report << "window: [" << format_double(r.config.window.x_min) << ", " << format_double(r.config.window.x_max)
           << "]\n";
    report << "steps: " << r.with_sponge.stats.steps << '\n';
    report << "max discarded imaginary part: sponge " << r.with_sponge.stats.max_discarded_imag << ", no-sponge "
           << r.without_sponge.stats.max_discarded_imag << '\n';
    if (!r.errors.values.empty()) {
        report << "max E: " << format_double(*std::max_element(r.errors.values.begin(), r.errors.values.end()))
               << '\n';
    }
    for (const auto& check : r.checks) report << format_check(check) << '\n';
    report << (r.all_passed() ? "RESULT: PASS" : "RESULT: FAIL") << '\n';
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out_dir,
                            const ProgressCallback& progress) {
    config.validate();
    ScenarioResult r;
    r.config = config;
    const Grid sponge_grid(config.n_sponge, config.dx);
    const Grid nosponge_grid(config.n_nosponge, config.dx);
    r.sponge = sponge_with_margin(config.sponge_a1, config.sponge_margin, sponge_grid);
    r.nosponge_mask = sponge_with_margin(config.sponge_a1, config.sponge_margin, nosponge_grid);

    const auto& w = config.window;
    if (!(r.sponge.x_left < w.x_min && w.x_max < r.sponge.x_right)) {
        throw ConfigError("comparison window is not inside the sponge plateau");
    }
    for (const Grid* g : {&sponge_grid, &nosponge_grid}) {
        if (!(-g->half_length() < w.x_min && w.x_max < g->half_length())) {
            throw ConfigError("comparison window does not fit inside the grid");
        }
    }

    const InitialData init = prepare_initial(config, sponge_grid, r.stationary, progress);
    r.froude = resolve_froude(config, init.froude);

    if (out_dir) std::filesystem::create_directories(*out_dir);
    const auto sub = [&](const char* name) -> std::optional<std::filesystem::path> {
        if (!out_dir) return std::nullopt;
        return *out_dir / name;
    };
    r.with_sponge = run_one(config, sponge_grid, init, r.froude, r.sponge, r.sponge, sub("sponge"), progress,
                            "sponge");
    r.without_sponge = run_one(config, nosponge_grid, init, r.froude, std::nullopt, r.nosponge_mask,
                               sub("nosponge"), progress, "no-sponge");

    const std::size_t count = std::min(r.with_sponge.snapshots.size(), r.without_sponge.snapshots.size());
    for (std::size_t i = 0; i < count; ++i) {
        r.errors.times.push_back(r.with_sponge.snapshots[i].time);
        r.errors.values.push_back(
            relative_error(r.without_sponge.snapshots[i], r.with_sponge.snapshots[i], config.window));
    }
    add_scenario_checks(r);
    if (out_dir) write_outputs(r, *out_dir);
    return r;
}

std::vector<Snapshot> run_single(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out_dir,
                                 const ProgressCallback& progress) {
    config.validate();
    const Grid grid(config.n_sponge, config.dx);
    std::optional<StationarySolution> stationary;
    const InitialData init = prepare_initial(config, grid, stationary, progress);
    const double froude = resolve_froude(config, init.froude);
    const SpongeProfile mask = sponge_with_margin(config.sponge_a1, config.sponge_margin, grid);
    if (progress && config.sponge && !mask.saturates) progress("warning: sponge does not saturate at the boundary");
    std::optional<SpongeProfile> sponge;
    if (config.sponge) sponge = mask;
    RunResult run = run_one(config, grid, init, froude, sponge, mask, out_dir, progress, "run");
    if (out_dir) {
        RealVector times;
        for (const auto& snap : run.snapshots) times.push_back(snap.time);
        write_series_csv(*out_dir / "amplitude.csv", "amax", times, run.amplitude);
        write_series_csv(*out_dir / "boundary.csv", "activity", times, run.boundary);
    }
    return std::move(run.snapshots);
}

}  // namespace bsq
