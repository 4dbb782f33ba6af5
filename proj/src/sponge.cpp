#include "bsq/sponge.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

namespace bsq {

double sponge_value(double a1, double x_left, double x_right, double x) {
    return 0.5 * a1 * (std::tanh(x - x_left) - std::tanh(x - x_right)) - a1;
}

double SpongeProfile::operator()(double x) const { return sponge_value(a1, x_left, x_right, x); }

SpongeProfile sponge_profile(double a1, double x_left, double x_right, const Grid& grid) {
    if (a1 < 0.0) throw std::invalid_argument("sponge intensity must be non-negative");
    if (!(x_left < x_right)) throw std::invalid_argument("sponge edges must satisfy x_left < x_right");
    SpongeProfile profile{a1, x_left, x_right, {}, true};
    profile.samples.resize(grid.size());
    const auto& x = grid.points();
    for (int j = 0; j < grid.size(); ++j) profile.samples[j] = sponge_value(a1, x_left, x_right, x[j]);
    if (a1 > 0.0) {
        const double L = grid.half_length();
        const double edge = std::min(std::abs(profile(-L)), std::abs(profile(L)));
        profile.saturates = edge >= 0.99 * a1;
    }
    return profile;
}

SpongeProfile symmetric_sponge(double a1, double a2, const Grid& grid) {
    return sponge_profile(a1, -a2, a2, grid);
}

SpongeProfile sponge_with_margin(double a1, double margin, const Grid& grid) {
    const double edge = grid.half_length() - margin;
    if (!(edge > 0.0)) throw std::invalid_argument("sponge margin exceeds the domain half-length");
    return sponge_profile(a1, -edge, edge, grid);
}

SpongeProfile constant_damping(double b, const Grid& grid) {
    if (b < 0.0) throw std::invalid_argument("damping must be non-negative");
    SpongeProfile profile;
    profile.a1 = b;
    // Edges collapse so that s(x) evaluates to -b everywhere.
    profile.x_left = 0.0;
    profile.x_right = 0.0;
    profile.samples.assign(grid.size(), -b);
    return profile;
}

double integrate(const ScalarFunction& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double error = 0.0;
    double l1 = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &error, &l1);
    if (!std::isfinite(value) || error > tol * std::max(1.0, l1)) {
        std::ostringstream msg;
        msg << "quadrature on [" << a << ", " << b << "] did not converge (error estimate " << error << ")";
        throw QuadratureError(msg.str());
    }
    return value;
}

double dalembert(const ScalarFunction& f, const ScalarFunction& g, double x, double t) {
    if (t < 0.0) throw std::invalid_argument("time must be non-negative");
    double value = 0.5 * (f(x + t) + f(x - t));
    if (g && t > 0.0) value += 0.5 * integrate(g, x - t, x + t);
    return value;
}

double damped_wave_exact(const DampedWaveProblem& problem, double x, double t) {
    if (problem.b < 0.0) throw std::invalid_argument("damping must be non-negative");
    double bracket = dalembert(problem.f, problem.g, x, t);
    if (problem.b > 0.0 && t > 0.0) bracket += 0.5 * problem.b * integrate(problem.f, x - t, x + t);
    return std::exp(-problem.b * t) * bracket;
}

double damped_wave_sponge(const ScalarFunction& f, const ScalarFunction& g,
                          const SpongeProfile& sponge, double x, double t) {
    const double s = sponge(x);
    double bracket = dalembert(f, g, x, t);
    if (s != 0.0 && t > 0.0) bracket -= 0.5 * s * integrate(f, x - t, x + t);
    return std::exp(s * t) * bracket;
}

}  // namespace bsq
