#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bsq/spectral.hpp"

using namespace bsq;
using std::numbers::pi;

namespace {

double max_abs_diff(const RealVector& a, const RealVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

RealVector sample(const Grid& g, auto f) {
    RealVector v(g.size());
    for (int j = 0; j < g.size(); ++j) v[j] = f(g.points()[j]);
    return v;
}

}  // namespace

TEST_CASE("grid n=4 layout") {
    const Grid g(4, 0.5);
    CHECK(g.half_length() == doctest::Approx(1.0));
    const RealVector expected_x{-1.0, -0.5, 0.0, 0.5};
    CHECK(g.points() == expected_x);
    CHECK(g.wavenumbers()[0] == 0.0);
    CHECK(g.wavenumbers()[1] == doctest::Approx(pi));
    CHECK(g.wavenumbers()[2] == 0.0);
    CHECK(g.wavenumbers()[3] == doctest::Approx(-pi));
}

TEST_CASE("grid nyquist slot is zero and wavenumbers are antisymmetric") {
    const Grid g(8, 0.25);
    CHECK(g.wavenumbers()[4] == 0.0);
    const Grid big(1024, 0.2);
    CHECK(big.half_length() == doctest::Approx(102.4));
    for (int j = 1; j < 512; ++j) CHECK(big.wavenumbers()[j] == -big.wavenumbers()[1024 - j]);
}

TEST_CASE("grid rejects bad sizes") {
    CHECK_THROWS_AS(Grid(7, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(Grid(2, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(Grid(8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(8, -1.0), std::invalid_argument);
}

TEST_CASE("grids sharing dx have identical coordinates") {
    const Grid small(1024, 0.2), large(8192, 0.2);
    for (int j = 0; j < small.size(); ++j) {
        const int k = large.index_of(small.points()[j]);
        REQUIRE(k >= 0);
        CHECK(large.points()[k] == small.points()[j]);
    }
    CHECK(small.index_of(0.1) == -1);
}

TEST_CASE("constant field maps to coefficient n") {
    const Grid g(16, 0.3);
    const Transform t(g);
    const auto c = t.to_spectral(RealVector(16, 1.0));
    CHECK(c[0].real() == doctest::Approx(16.0));
    for (int j = 1; j < 16; ++j) CHECK(std::abs(c[j]) < 1e-13);
}

TEST_CASE("single harmonic has two coefficients") {
    const Grid g(32, 0.25);
    const Transform t(g);
    const double L = 32 * 0.25;
    const auto c = t.to_spectral(sample(g, [&](double x) { return std::cos(2 * pi * x / L); }));
    for (int j = 0; j < 32; ++j) {
        if (j == 1 || j == 31) {
            CHECK(std::abs(c[j]) == doctest::Approx(16.0));
        } else {
            CHECK(std::abs(c[j]) < 1e-12);
        }
    }
}

TEST_CASE("random round trip") {
    const Grid g(1024, 0.2);
    const Transform t(g);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> dist;
    RealVector v(1024);
    for (auto& x : v) x = dist(rng);
    double imag = 1.0;
    const auto back = t.to_physical(t.to_spectral(v), &imag);
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    CHECK(max_abs_diff(back, v) / scale < 1e-12);
    CHECK(imag < 1e-10);
    CHECK(conjugate_symmetry_defect(t.to_spectral(v)) < 1e-12);

    RealVector fast(1024);
    t.inverse_symmetric(t.to_spectral(v), fast);
    CHECK(max_abs_diff(fast, v) / scale < 1e-12);
}

TEST_CASE("derivative of a resolved harmonic") {
    const Grid g(256, 0.1);
    const Transform t(g);
    const double dk = g.dk();
    const auto d = derivative(t, sample(g, [&](double x) { return std::sin(dk * x); }), 1);
    CHECK(max_abs_diff(d, sample(g, [&](double x) { return dk * std::cos(dk * x); })) < 1e-12);
    const auto zero = derivative(t, RealVector(256, 3.5), 1);
    CHECK(max_abs_diff(zero, RealVector(256, 0.0)) < 1e-12);
}

TEST_CASE("third derivative against centered differences") {
    const Grid g(2048, 0.05);
    const Transform t(g);
    auto f = [](double x) { return 1.0 / std::pow(std::cosh(x), 2); };
    const auto d3 = derivative(t, sample(g, f), 3);
    auto fd_error = [&](double h) {
        double err = 0.0;
        for (int j = 0; j < g.size(); j += 7) {
            const double x = g.points()[j];
            const double fd = (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
            err = std::max(err, std::abs(fd - d3[j]));
        }
        return err;
    };
    const double coarse = fd_error(0.02), fine = fd_error(0.01);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.05));
    CHECK(fine < 2e-3);
}

TEST_CASE("antiderivative") {
    const Grid g(256, 0.1);
    const Transform t(g);
    const double dk = g.dk();
    const auto a = antiderivative(t, sample(g, [&](double x) { return std::cos(dk * x); }));
    CHECK(max_abs_diff(a, sample(g, [&](double x) { return std::sin(dk * x) / dk; })) < 1e-12);
    const auto zero = antiderivative(t, RealVector(256, 2.0));
    CHECK(max_abs_diff(zero, RealVector(256, 0.0)) < 1e-12);

    // zero mean output, D(A f) = f on zero-mean Nyquist-free data
    const auto gauss = sample(g, [](double x) { return x * std::exp(-x * x); });
    const auto ag = antiderivative(t, gauss);
    double mean = 0.0;
    for (double v : ag) mean += v;
    CHECK(std::abs(mean / 256) < 1e-13);
    CHECK(max_abs_diff(derivative(t, ag, 1), gauss) < 1e-12);

    auto coeffs = t.to_spectral(gauss);
    auto ad = spectral_antiderivative(g, spectral_derivative(g, coeffs, 1));
    coeffs[0] = 0.0;
    coeffs[128] = 0.0;
    double e = 0.0;
    for (int j = 0; j < 256; ++j) e = std::max(e, std::abs(ad[j] - coeffs[j]));
    CHECK(e < 1e-12);
}

TEST_CASE("derivative is linear") {
    const Grid g(128, 0.2);
    const Transform t(g);
    const auto f = sample(g, [](double x) { return std::exp(-x * x / 4); });
    const auto h = sample(g, [](double x) { return std::tanh(x) / std::cosh(x); });
    RealVector combo(128);
    for (int j = 0; j < 128; ++j) combo[j] = 2.5 * f[j] - 1.5 * h[j];
    const auto df = derivative(t, f, 1), dh = derivative(t, h, 1), dc = derivative(t, combo, 1);
    double e = 0.0;
    for (int j = 0; j < 128; ++j) e = std::max(e, std::abs(dc[j] - (2.5 * df[j] - 1.5 * dh[j])));
    CHECK(e < 1e-12);
}

TEST_CASE("two-thirds filter") {
    const Grid g(12, 1.0);
    ComplexVector c(12, Complex(1.0, 0.0));
    dealias_two_thirds(g, c);
    for (int j = 0; j < 12; ++j) {
        const int m = j <= 6 ? j : 12 - j;
        CHECK(std::abs(c[j]) == (m > 4 ? 0.0 : 1.0));
    }
}
