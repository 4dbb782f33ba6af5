#pragma once

#include <functional>
#include <stdexcept>

#include "bsq/params.hpp"
#include "bsq/spectral.hpp"

namespace bsq {

/// A converged stationary solitary wave in the frame moving with speed `froude`.
struct StationarySolution {
    RealVector eta;
    RealVector u;
    double froude = 0.0;
    double amplitude = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

struct WaveGuess {
    RealVector eta;
    RealVector u;
    double froude = 0.0;
};

/// KdV soliton eta = A sech^2(Kx), K = sqrt(3 A alpha / beta) / 2, with
/// u = eta - (alpha/4) eta^2 + (beta/6) eta_xx and F = -(1 + alpha A / 2).
WaveGuess kdv_initial_guess(double amplitude, const PhysicalParams& params, const Grid& grid);

/// Residual of the even-symmetric stationary system.
///
/// Layout: G1 for modes 0..n/2, G2 for modes 0..n/2, then the pinning
/// constraint eta(0) - A. Real parts are returned; `max_imag` reports the
/// largest imaginary part discarded from the spectral blocks.
struct StationaryResidual {
    RealVector values;
    double max_imag = 0.0;

    double mean_abs() const;
};

StationaryResidual stationary_residual(std::span<const Complex> eta_hat, std::span<const Complex> u_hat,
                                       double froude, double amplitude, const PhysicalParams& params,
                                       const Transform& transform);

struct NewtonIterate {
    int iteration = 0;
    double residual = 0.0;
    const RealVector* eta = nullptr;
    const RealVector* u = nullptr;
    double froude = 0.0;
};

struct NewtonOptions {
    double tol = 1e-10;
    int max_iter = 100;
    double fd_step = 1e-10;
    /// Called once per evaluated iterate, including the final one.
    std::function<void(const NewtonIterate&)> on_iterate;
};

class NewtonDivergence : public std::runtime_error {
public:
    NewtonDivergence(const std::string& what, double last_residual, int iterations)
        : std::runtime_error(what), last_residual(last_residual), iterations(iterations) {}
    double last_residual;
    int iterations;
};

class SingularJacobian : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Newton iteration on the reduced (n + 3)-dimensional real system with a
/// forward-difference Jacobian.
StationarySolution newton_solve(const WaveGuess& guess, double amplitude, const PhysicalParams& params,
                                const Grid& grid, const NewtonOptions& options = {});

/// Largest |v_j - v_{n-j}|, zero for fields even about x = 0.
double even_symmetry_defect(std::span<const double> values);

}  // namespace bsq
