#pragma once

#include <functional>
#include <stdexcept>

#include "bsq/spectral.hpp"

namespace bsq {

/// Damping profile s(x) <= 0: near zero on the plateau (x_left, x_right) and
/// approaching -a1 outside it.
struct SpongeProfile {
    double a1 = 0.0;
    double x_left = 0.0;
    double x_right = 0.0;
    RealVector samples;
    /// False when |s| at the domain ends is below 0.99 a1.
    bool saturates = true;

    double operator()(double x) const;
    bool enabled() const { return a1 > 0.0; }
};

/// s(x) = (a1/2)(tanh(x - x_left) - tanh(x - x_right)) - a1
double sponge_value(double a1, double x_left, double x_right, double x);

SpongeProfile sponge_profile(double a1, double x_left, double x_right, const Grid& grid);

/// Symmetric form with plateau (-a2, a2).
SpongeProfile symmetric_sponge(double a1, double a2, const Grid& grid);

/// Sponge whose edges sit `margin` inside each end of the domain. With the
/// default margin and L = 102.4 the edges are at +-90.
SpongeProfile sponge_with_margin(double a1, double margin, const Grid& grid);

/// Spatially constant damping s = -b (the damped wave equation setting).
SpongeProfile constant_damping(double b, const Grid& grid);

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using ScalarFunction = std::function<double(double)>;

/// Adaptive Gauss-Kronrod integral of f over [a, b].
double integrate(const ScalarFunction& f, double a, double b, double tol = 1e-10);

/// Undamped d'Alembert solution of eta_tt = eta_xx with eta(x,0) = f and
/// eta_t(x,0) = g.
double dalembert(const ScalarFunction& f, const ScalarFunction& g, double x, double t);

struct DampedWaveProblem {
    ScalarFunction f;
    ScalarFunction g;
    double b = 0.0;
};

/// Closed-form solution of eta_tt - eta_xx + 2 b eta_t + b^2 eta = 0:
///   e^{-bt} [ (f(x+t)+f(x-t))/2 + 1/2 int g + b/2 int f ],
/// both integrals over [x-t, x+t].
double damped_wave_exact(const DampedWaveProblem& problem, double x, double t);

/// Same formula with b replaced by -s(x) pointwise. Only exact when s is
/// constant; kept as the heuristic that motivates the sponge shape.
double damped_wave_sponge(const ScalarFunction& f, const ScalarFunction& g,
                          const SpongeProfile& sponge, double x, double t);

}  // namespace bsq
