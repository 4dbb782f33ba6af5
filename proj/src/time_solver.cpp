#include "bsq/time_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace bsq {

namespace {

constexpr double kDecayTolerance = 1e-12;

long checked_ratio(double numerator, double denominator, const char* what) {
    const double ratio = numerator / denominator;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded)) {
        std::ostringstream msg;
        msg << what << " must be a positive integer multiple (got ratio " << ratio << ")";
        throw ConfigError(msg.str());
    }
    return static_cast<long>(rounded);
}

void check_decay(const RealVector& samples, const char* what) {
    if (samples.empty()) return;
    const double edge = std::max(std::abs(samples.front()), std::abs(samples.back()));
    if (edge >= kDecayTolerance) {
        std::ostringstream msg;
        msg << what << " does not decay at the domain boundary (|value| = " << edge << ")";
        throw ConfigError(msg.str());
    }
}

void axpy(const ComplexVector& y, double a, const ComplexVector& x, ComplexVector& out) {
    const std::size_t n = y.size();
    for (std::size_t j = 0; j < n; ++j) out[j] = y[j] + a * x[j];
}

}  // namespace

RealVector make_topography(const TopographySpec& spec, const Grid& grid) {
    const int n = grid.size();
    RealVector h(n, 0.0);
    const auto& x = grid.points();
    switch (spec.kind) {
        case TopographyKind::none:
            return h;
        case TopographyKind::gaussian_pair:
            for (int j = 0; j < n; ++j) {
                const double left = x[j] + spec.b0;
                const double right = x[j] - spec.b0;
                h[j] = spec.a0 * (std::exp(-left * left) + std::exp(-right * right));
            }
            break;
        case TopographyKind::gaussian:
            for (int j = 0; j < n; ++j) h[j] = spec.scale * std::exp(-x[j] * x[j]) / std::sqrt(std::numbers::pi);
            break;
    }
    check_decay(h, "topography");
    return h;
}

void EvolutionConfig::validate() const {
    params.validate();
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(t_final > 0.0)) throw ConfigError("t_final must be positive");
    if (!(snapshot_interval > 0.0)) throw ConfigError("snapshot_interval must be positive");
    steps_per_snapshot();
    snapshot_count();
    const auto n = static_cast<std::size_t>(grid.size());
    if (initial.eta.size() != n || initial.u.size() != n) throw ConfigError("initial state does not match the grid");
    if (sponge && sponge->samples.size() != n) throw ConfigError("sponge does not match the grid");
    if (!forcing.topography.empty() && forcing.topography.size() != n) {
        throw ConfigError("topography does not match the grid");
    }
    if (!forcing.pressure.empty() && forcing.pressure.size() != n) {
        throw ConfigError("pressure does not match the grid");
    }
    check_decay(forcing.topography, "topography");
    check_decay(forcing.pressure, "pressure");
}

long EvolutionConfig::steps_per_snapshot() const {
    return checked_ratio(snapshot_interval, dt, "snapshot_interval / dt");
}

long EvolutionConfig::snapshot_count() const {
    return checked_ratio(t_final, snapshot_interval, "t_final / snapshot_interval");
}

BoussinesqRhs::BoussinesqRhs(const Grid& grid, const PhysicalParams& params,
                             const std::optional<SpongeProfile>& sponge, const Forcing& forcing)
    : transform_(grid), params_(params) {
    const int n = grid.size();
    const double F = params.froude;
    const auto& k = grid.wavenumbers();

    ik_.resize(n);
    inv_denominator_.resize(n);
    for (int j = 0; j < n; ++j) {
        ik_[j] = Complex(0.0, k[j]);
        inv_denominator_[j] = 1.0 / (1.0 + (params.beta / 3.0) * k[j] * k[j]);
    }

    if (sponge && sponge->enabled()) {
        if (static_cast<int>(sponge->samples.size()) != n) throw ConfigError("sponge does not match the grid");
        has_sponge_ = true;
        sponge_ = sponge->samples;
        sponge_sq_.resize(n);
        for (int j = 0; j < n; ++j) sponge_sq_[j] = sponge_[j] * sponge_[j];
    }

    // Static forcing contributions: ikF h_hat for eta, and
    // -(beta/2) F^2 (ik)^3 h_hat - alpha ik P_hat for u (before the division).
    h_hat_.assign(n, 0.0);
    p_hat_.assign(n, 0.0);
    if (!forcing.topography.empty()) {
        has_topography_ = true;
        h_ = forcing.topography;
        const ComplexVector h_hat = transform_.to_spectral(h_);
        for (int j = 0; j < n; ++j) {
            const Complex ik = ik_[j];
            h_hat_[j] = ik * F * h_hat[j];
            p_hat_[j] = -(params.beta / 2.0) * F * F * ik * ik * ik * h_hat[j];
        }
    }
    if (!forcing.pressure.empty()) {
        const ComplexVector pressure_hat = transform_.to_spectral(forcing.pressure);
        for (int j = 0; j < n; ++j) p_hat_[j] -= params.alpha * ik_[j] * pressure_hat[j];
    }

    eta_.resize(n);
    u_.resize(n);
    work_.resize(n);
    work_hat_.resize(n);
}

namespace {

inline Complex times_i(Complex z) { return {-z.imag(), z.real()}; }

}  // namespace

void BoussinesqRhs::operator()(const SpectralState& state, SpectralState& derivative) {
    const int n = grid().size();
    const double F = params_.froude;
    const double a = params_.alpha;
    const double b = params_.beta;
    derivative.eta_hat.resize(n);
    derivative.u_hat.resize(n);
    auto& deta = derivative.eta_hat;
    auto& du = derivative.u_hat;

    transform_.inverse_symmetric(state.eta_hat, eta_);
    transform_.inverse_symmetric(state.u_hat, u_);

    double eta_max = 0.0;
    for (int j = 0; j < n; ++j) {
        const double v = std::abs(eta_[j]);
        if (!std::isfinite(v)) {
            eta_max = std::numeric_limits<double>::quiet_NaN();
            break;
        }
        eta_max = std::max(eta_max, v);
    }
    last_eta_max_ = eta_max;

    // Flux products: ik alpha T(h u) - ik alpha T(eta u) = ik alpha T((h - eta) u).
    if (has_topography_) {
        for (int j = 0; j < n; ++j) work_[j] = (h_[j] - eta_[j]) * u_[j];
    } else {
        for (int j = 0; j < n; ++j) work_[j] = -eta_[j] * u_[j];
    }
    const auto& k = grid().wavenumbers();
    transform_.forward(work_, work_hat_);
    for (int j = 0; j < n; ++j) {
        deta[j] = times_i(k[j] * (-F * state.eta_hat[j] - state.u_hat[j] + a * work_hat_[j])) + h_hat_[j];
    }

    for (int j = 0; j < n; ++j) work_[j] = u_[j] * u_[j];
    transform_.forward(work_, work_hat_);
    for (int j = 0; j < n; ++j) {
        // (ik)^3 = -i k^3
        const Complex inner = -F * state.u_hat[j] - state.eta_hat[j] - 0.5 * a * work_hat_[j] -
                              (b / 3.0) * F * k[j] * k[j] * state.u_hat[j];
        du[j] = times_i(k[j] * inner) + p_hat_[j];
    }

    if (has_sponge_) {
        for (int j = 0; j < n; ++j) work_[j] = 2.0 * sponge_[j] * eta_[j];
        transform_.forward(work_, work_hat_);
        for (int j = 0; j < n; ++j) deta[j] += work_hat_[j];

        for (int j = 0; j < n; ++j) work_[j] = sponge_sq_[j] * eta_[j];
        transform_.forward(work_, work_hat_);
        for (int j = 0; j < n; ++j) {
            // Antiderivative with the mean and Nyquist modes set to zero.
            if (k[j] != 0.0) du[j] -= times_i(work_hat_[j] / k[j]);
        }
    }

    for (int j = 0; j < n; ++j) du[j] *= inv_denominator_[j];
}

SpectralState rhs(const SpectralState& state, const EvolutionConfig& config) {
    BoussinesqRhs evaluator(config.grid, config.params, config.sponge, config.forcing);
    SpectralState out;
    evaluator(state, out);
    return out;
}

Rk4Stepper::Rk4Stepper(BoussinesqRhs& rhs) : rhs_(rhs) {
    const int n = rhs.grid().size();
    for (auto* s : {&k1_, &k2_, &k3_, &k4_, &stage_}) {
        s->eta_hat.resize(n);
        s->u_hat.resize(n);
    }
}

void Rk4Stepper::step(SpectralState& state, double dt, double time) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    auto evaluate = [&](const SpectralState& y, SpectralState& k) {
        rhs_(y, k);
        const double eta_max = rhs_.last_eta_max();
        if (!(eta_max <= blow_up_threshold)) {
            std::ostringstream msg;
            msg << "solution blew up near t = " << time << " (max |eta| = " << eta_max << ")";
            throw BlowUpError(msg.str(), time);
        }
    };

    evaluate(state, k1_);
    axpy(state.eta_hat, 0.5 * dt, k1_.eta_hat, stage_.eta_hat);
    axpy(state.u_hat, 0.5 * dt, k1_.u_hat, stage_.u_hat);
    evaluate(stage_, k2_);
    axpy(state.eta_hat, 0.5 * dt, k2_.eta_hat, stage_.eta_hat);
    axpy(state.u_hat, 0.5 * dt, k2_.u_hat, stage_.u_hat);
    evaluate(stage_, k3_);
    axpy(state.eta_hat, dt, k3_.eta_hat, stage_.eta_hat);
    axpy(state.u_hat, dt, k3_.u_hat, stage_.u_hat);
    evaluate(stage_, k4_);

    const double w = dt / 6.0;
    const std::size_t n = state.eta_hat.size();
    for (std::size_t j = 0; j < n; ++j) {
        state.eta_hat[j] += w * (k1_.eta_hat[j] + 2.0 * k2_.eta_hat[j] + 2.0 * k3_.eta_hat[j] + k4_.eta_hat[j]);
        state.u_hat[j] += w * (k1_.u_hat[j] + 2.0 * k2_.u_hat[j] + 2.0 * k3_.u_hat[j] + k4_.u_hat[j]);
    }
}

SpectralState rk4_step(const SpectralState& state, double dt, const EvolutionConfig& config) {
    BoussinesqRhs evaluator(config.grid, config.params, config.sponge, config.forcing);
    Rk4Stepper stepper(evaluator);
    SpectralState out = state;
    stepper.step(out, dt, 0.0);
    return out;
}

SpectralState to_spectral_state(const Transform& transform, const WaveState& state) {
    return SpectralState{transform.to_spectral(state.eta), transform.to_spectral(state.u)};
}

WaveState to_wave_state(const Transform& transform, const SpectralState& state, double time,
                        double* discarded_imag) {
    double imag_eta = 0.0;
    double imag_u = 0.0;
    WaveState out;
    out.eta = transform.to_physical(state.eta_hat, &imag_eta);
    out.u = transform.to_physical(state.u_hat, &imag_u);
    out.time = time;
    if (discarded_imag) *discarded_imag = std::max(imag_eta, imag_u);
    return out;
}

EvolutionStats evolve(const EvolutionConfig& config, const SnapshotCallback& on_snapshot) {
    config.validate();
    const long per_snapshot = config.steps_per_snapshot();
    const long snapshots = config.snapshot_count();

    BoussinesqRhs evaluator(config.grid, config.params, config.sponge, config.forcing);
    Rk4Stepper stepper(evaluator);
    const Transform& transform = evaluator.transform();

    SpectralState state = to_spectral_state(transform, config.initial);
    const double t0 = config.initial.time;
    EvolutionStats stats;

    WaveState first = config.initial;
    first.time = t0;
    if (on_snapshot) on_snapshot(first);

    long step = 0;
    for (long s = 1; s <= snapshots; ++s) {
        for (long i = 0; i < per_snapshot; ++i) {
            stepper.step(state, config.dt, t0 + step * config.dt);
            ++step;
        }
        double imag = 0.0;
        const WaveState snap = to_wave_state(transform, state, t0 + s * config.snapshot_interval, &imag);
        stats.max_discarded_imag = std::max(stats.max_discarded_imag, imag);
        if (on_snapshot) on_snapshot(snap);
    }
    stats.steps = step;
    return stats;
}

std::vector<WaveState> evolve(const EvolutionConfig& config) {
    std::vector<WaveState> out;
    evolve(config, [&](const WaveState& s) { out.push_back(s); });
    return out;
}

}  // namespace bsq
