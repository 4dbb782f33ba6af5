#include <doctest.h>

#include <cmath>

#include "bsq/sponge.hpp"

using namespace bsq;

namespace {

double gaussian(double x) { return std::exp(-x * x); }
double zero(double) { return 0.0; }

// Fourth-order finite differences in space with RK4 in time for
// eta_tt = eta_xx - 2 b eta_t - b^2 eta on a domain wide enough that the
// boundaries are never reached.
double finite_difference_damped(double b, double x_eval, double t_end) {
    const double half = 30.0;
    const double h = 0.01;
    const int n = static_cast<int>(2 * half / h) + 1;
    std::vector<double> eta(n), v(n, 0.0);
    for (int j = 0; j < n; ++j) eta[j] = gaussian(-half + j * h);
    auto lap = [&](const std::vector<double>& e, std::vector<double>& out) {
        for (int j = 0; j < n; ++j) {
            if (j < 2 || j >= n - 2) {
                out[j] = 0.0;
                continue;
            }
            out[j] = (-e[j + 2] + 16 * e[j + 1] - 30 * e[j] + 16 * e[j - 1] - e[j - 2]) / (12 * h * h);
        }
    };
    auto rhs = [&](const std::vector<double>& e, const std::vector<double>& w, std::vector<double>& de,
                   std::vector<double>& dw) {
        lap(e, dw);
        for (int j = 0; j < n; ++j) {
            de[j] = w[j];
            dw[j] += -2 * b * w[j] - b * b * e[j];
        }
    };
    const double dt = 0.005;
    const int steps = static_cast<int>(std::lround(t_end / dt));
    std::vector<double> k1e(n), k1v(n), k2e(n), k2v(n), k3e(n), k3v(n), k4e(n), k4v(n), te(n), tv(n);
    for (int s = 0; s < steps; ++s) {
        rhs(eta, v, k1e, k1v);
        for (int j = 0; j < n; ++j) te[j] = eta[j] + 0.5 * dt * k1e[j], tv[j] = v[j] + 0.5 * dt * k1v[j];
        rhs(te, tv, k2e, k2v);
        for (int j = 0; j < n; ++j) te[j] = eta[j] + 0.5 * dt * k2e[j], tv[j] = v[j] + 0.5 * dt * k2v[j];
        rhs(te, tv, k3e, k3v);
        for (int j = 0; j < n; ++j) te[j] = eta[j] + dt * k3e[j], tv[j] = v[j] + dt * k3v[j];
        rhs(te, tv, k4e, k4v);
        for (int j = 0; j < n; ++j) {
            eta[j] += dt / 6 * (k1e[j] + 2 * k2e[j] + 2 * k3e[j] + k4e[j]);
            v[j] += dt / 6 * (k1v[j] + 2 * k2v[j] + 2 * k3v[j] + k4v[j]);
        }
    }
    const int idx = static_cast<int>(std::lround((x_eval + half) / h));
    return eta[idx];
}

}  // namespace

TEST_CASE("sponge plateau and saturation") {
    const Grid g(1024, 0.2);
    const auto s = sponge_profile(10.0, -90.0, 90.0, g);
    CHECK(std::abs(s(0.0)) < 1e-70);
    CHECK(s(1000.0) == doctest::Approx(-10.0));
    CHECK(s(-1000.0) == doctest::Approx(-10.0));
    CHECK(s.saturates);
    double plateau = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double x = g.points()[j];
        if (x >= -80.0 && x <= 80.0) plateau = std::max(plateau, std::abs(s.samples[j]));
    }
    // largest at the window ends: 5 (1 - tanh 10)
    CHECK(plateau == doctest::Approx(5.0 * (1.0 - std::tanh(10.0))).epsilon(1e-6));
    CHECK(plateau < 2.1e-8);
}

TEST_CASE("sponge with margin matches the default edges") {
    const Grid g(1024, 0.2);
    const auto s = sponge_with_margin(10.0, 12.4, g);
    CHECK(s.x_left == doctest::Approx(-90.0));
    CHECK(s.x_right == doctest::Approx(90.0));
    const auto wide = sponge_with_margin(10.0, 12.4, Grid(8192, 0.2));
    CHECK(wide.x_right == doctest::Approx(819.2 - 12.4));
}

TEST_CASE("disabled and invalid sponges") {
    const Grid g(64, 0.5);
    const auto off = sponge_profile(0.0, -5.0, 5.0, g);
    CHECK_FALSE(off.enabled());
    for (double v : off.samples) CHECK(v == 0.0);
    CHECK_THROWS_AS(sponge_profile(10.0, 5.0, -5.0, g), std::invalid_argument);
    CHECK_THROWS_AS(sponge_profile(-1.0, -5.0, 5.0, g), std::invalid_argument);
    CHECK_FALSE(sponge_profile(10.0, -15.9, 15.9, g).saturates);
    const auto c = constant_damping(0.3, g);
    for (double v : c.samples) CHECK(v == -0.3);
    CHECK(c(4.0) == -0.3);
}

TEST_CASE("symmetric form") {
    const Grid g(1024, 0.2);
    const auto a = symmetric_sponge(10.0, 90.0, g);
    const auto b = sponge_profile(10.0, -90.0, 90.0, g);
    CHECK(a.samples == b.samples);
}

TEST_CASE("quadrature") {
    CHECK(integrate(gaussian, -10.0, 10.0) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    CHECK(integrate(zero, -1.0, 1.0) == 0.0);
    CHECK(integrate(gaussian, 2.0, 2.0) == 0.0);
}

TEST_CASE("dalembert") {
    for (double x : {-2.0, 0.0, 0.7, 3.0}) {
        for (double t : {0.0, 0.5, 2.0}) {
            CHECK(dalembert(gaussian, zero, x, t) ==
                  doctest::Approx(0.5 * (gaussian(x + t) + gaussian(x - t))).epsilon(1e-14));
            CHECK(dalembert(zero, zero, x, t) == 0.0);
        }
        CHECK(dalembert(gaussian, zero, x, 0.0) == gaussian(x));
    }
    // g = gaussian, f = 0 -> erf form
    const double x = 0.3, t = 1.2;
    const double expected = 0.25 * std::sqrt(M_PI) * (std::erf(x + t) - std::erf(x - t));
    CHECK(dalembert(zero, gaussian, x, t) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("damped wave reduces to dalembert and decays") {
    const DampedWaveProblem undamped{gaussian, zero, 0.0};
    for (double x : {-1.0, 0.0, 2.5}) {
        CHECK(damped_wave_exact(undamped, x, 1.5) == dalembert(gaussian, zero, x, 1.5));
        CHECK(damped_wave_exact({zero, zero, 0.5}, x, 1.5) == 0.0);
        const double small = damped_wave_exact({gaussian, zero, 1e-6}, x, 3.0);
        CHECK(std::abs(small - damped_wave_exact(undamped, x, 3.0)) < 1e-4);
    }
    const DampedWaveProblem damped{gaussian, zero, 0.5};
    const double t = 40.0;
    CHECK(std::abs(damped_wave_exact(damped, 0.0, t)) < std::exp(-0.5 * t / 2));
}

TEST_CASE("damped wave exact matches a finite-difference solve") {
    for (double b : {0.0, 0.5}) {
        for (double x : {0.0, 1.5, 4.0}) {
            const double t = 3.0;
            const double exact = damped_wave_exact({gaussian, zero, b}, x, t);
            CHECK(std::abs(exact - finite_difference_damped(b, x, t)) < 1e-4);
        }
    }
}

TEST_CASE("variable sponge heuristic equals the constant form for constant s") {
    const Grid g(64, 0.5);
    const auto c = constant_damping(0.2, g);
    CHECK(damped_wave_sponge(gaussian, zero, c, 0.4, 2.0) ==
          doctest::Approx(damped_wave_exact({gaussian, zero, 0.2}, 0.4, 2.0)).epsilon(1e-14));
}
