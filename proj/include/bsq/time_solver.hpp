#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsq/params.hpp"
#include "bsq/spectral.hpp"
#include "bsq/sponge.hpp"

namespace bsq {

enum class TopographyKind { none, gaussian_pair, gaussian };

/// Bottom shape in the moving frame.
///   gaussian_pair: a0 (exp(-(x + b0)^2) + exp(-(x - b0)^2))
///   gaussian:      scale exp(-x^2) / sqrt(pi)
struct TopographySpec {
    TopographyKind kind = TopographyKind::none;
    double a0 = 0.0;
    double b0 = 0.0;
    double scale = 0.0;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Samples the topography; throws ConfigError if it does not decay below
/// 1e-12 at the domain ends.
RealVector make_topography(const TopographySpec& spec, const Grid& grid);

struct Forcing {
    RealVector topography;  ///< h(x_j); empty means flat bottom
    RealVector pressure;    ///< P(x_j); empty means constant pressure
};

struct WaveState {
    RealVector eta;
    RealVector u;
    double time = 0.0;
};

struct EvolutionConfig {
    PhysicalParams params;  ///< params.froude is the frame speed
    Grid grid{1024, 0.2};
    double dt = 0.01;
    double t_final = 1.0;
    double snapshot_interval = 1.0;
    std::optional<SpongeProfile> sponge;
    Forcing forcing;
    WaveState initial;

    void validate() const;
    long steps_per_snapshot() const;
    long snapshot_count() const;  ///< number of intervals, excluding t = 0
};

/// Spectral state (full FFT-ordered coefficient arrays).
struct SpectralState {
    ComplexVector eta_hat;
    ComplexVector u_hat;
};

class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double time) : std::runtime_error(what), time(time) {}
    double time;
};

/// Right-hand side of the moving-frame system in Fourier space.
///
///   d(eta_hat)/dt = -ikF eta_hat - ik u_hat + ik alpha T(h u) - ik alpha T(eta u)
///                   + 2 T(s eta) + ikF h_hat
///   d(u_hat)/dt = [ -ikF u_hat - ik eta_hat - (alpha/2) ik T(u^2) + (beta/3) F (ik)^3 u_hat
///                   + A(T(s^2 eta)) - (beta/2) F^2 (ik)^3 h_hat - alpha ik P_hat ]
///                 / (1 - (beta/3)(ik)^2)
///
/// T is the transform of a pointwise physical product and A the zero-mean,
/// Nyquist-free antiderivative. No dealiasing is applied.
class BoussinesqRhs {
public:
    BoussinesqRhs(const Grid& grid, const PhysicalParams& params, const std::optional<SpongeProfile>& sponge,
                  const Forcing& forcing);

    const Transform& transform() const { return transform_; }
    const Grid& grid() const { return transform_.grid(); }

    void operator()(const SpectralState& state, SpectralState& derivative);

    /// max |eta| over the physical grid seen by the most recent evaluation
    /// (NaN if a non-finite value was encountered).
    double last_eta_max() const { return last_eta_max_; }

private:
    Transform transform_;
    PhysicalParams params_;
    bool has_sponge_ = false;
    bool has_topography_ = false;
    RealVector sponge_, sponge_sq_, h_;
    ComplexVector h_hat_, p_hat_;
    ComplexVector ik_, inv_denominator_;
    RealVector eta_, u_, work_;
    ComplexVector work_hat_;
    double last_eta_max_ = 0.0;
};

/// Free-function form of the right-hand side.
SpectralState rhs(const SpectralState& state, const EvolutionConfig& config);

/// Classical RK4 step. Throws BlowUpError if any stage produces non-finite
/// values or |eta| exceeds the blow-up threshold.
class Rk4Stepper {
public:
    static constexpr double blow_up_threshold = 1e3;

    explicit Rk4Stepper(BoussinesqRhs& rhs);
    void step(SpectralState& state, double dt, double time);

private:
    BoussinesqRhs& rhs_;
    SpectralState k1_, k2_, k3_, k4_, stage_;
};

SpectralState rk4_step(const SpectralState& state, double dt, const EvolutionConfig& config);

SpectralState to_spectral_state(const Transform& transform, const WaveState& state);

/// Snapshot conversion; `discarded_imag` receives the reality diagnostic.
WaveState to_wave_state(const Transform& transform, const SpectralState& state, double time,
                        double* discarded_imag = nullptr);

struct EvolutionStats {
    long steps = 0;
    double max_discarded_imag = 0.0;
};

using SnapshotCallback = std::function<void(const WaveState&)>;

/// Integrates from config.initial to config.t_final, invoking `on_snapshot`
/// at t = 0 and every snapshot_interval. The state stays in spectral form
/// between snapshots.
EvolutionStats evolve(const EvolutionConfig& config, const SnapshotCallback& on_snapshot);

/// Collecting variant.
std::vector<WaveState> evolve(const EvolutionConfig& config);

}  // namespace bsq
