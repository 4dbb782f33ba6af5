#include "bsq/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bsq {

namespace {

// FFTW planning is not thread safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Grid::Grid(int n, double dx) : n_(n), dx_(dx) {
    if (n < 4 || n % 2 != 0) {
        throw std::invalid_argument("grid size must be even and >= 4, got " + std::to_string(n));
    }
    if (!(dx > 0.0) || !std::isfinite(dx)) {
        throw std::invalid_argument("grid spacing must be positive");
    }
    const int half = n / 2;
    half_length_ = half * dx;
    dk_ = 2.0 * std::numbers::pi / (n * dx);
    points_.resize(n);
    wavenumbers_.resize(n);
    for (int j = 0; j < n; ++j) {
        points_[j] = (j - half) * dx;
        int m = 0;
        if (j < half) {
            m = j;
        } else if (j > half) {
            m = j - n;
        }
        wavenumbers_[j] = m * dk_;
    }
}

int Grid::index_of(double x, double tol) const {
    const double pos = std::round(x / dx_) + n_ / 2;
    if (pos < 0 || pos >= n_) return -1;
    const int j = static_cast<int>(pos);
    return std::abs(points_[j] - x) <= tol ? j : -1;
}

Grid make_grid(int n, double dx) { return Grid(n, dx); }

struct Transform::Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    fftw_plan c2c_inverse = nullptr;
};

Transform::Transform(const Grid& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
    const int n = grid_.size();
    std::vector<double> rbuf(n);
    std::vector<Complex> cbuf(n), cbuf2(n);
    // FFTW_ESTIMATE keeps the algorithm choice, and therefore the rounding,
    // identical from run to run.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    plans_->r2c = fftw_plan_dft_r2c_1d(n, rbuf.data(), as_fftw(cbuf.data()), flags);
    plans_->c2r = fftw_plan_dft_c2r_1d(n, as_fftw(cbuf.data()), rbuf.data(), flags | FFTW_DESTROY_INPUT);
    plans_->c2c_inverse =
        fftw_plan_dft_1d(n, as_fftw(cbuf.data()), as_fftw(cbuf2.data()), FFTW_BACKWARD, flags);
    if (!plans_->r2c || !plans_->c2r || !plans_->c2c_inverse) {
        throw std::runtime_error("FFTW planning failed");
    }
}

Transform::~Transform() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plans_->r2c);
    fftw_destroy_plan(plans_->c2r);
    fftw_destroy_plan(plans_->c2c_inverse);
}

void Transform::forward(std::span<const double> in, std::span<Complex> out) const {
    const int n = size();
    if (static_cast<int>(in.size()) != n || static_cast<int>(out.size()) != n) {
        throw std::invalid_argument("transform size mismatch");
    }
    // r2c fills the first n/2+1 slots; the rest follow from conjugate symmetry.
    fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(in.data()), as_fftw(out.data()));
    for (int j = n / 2 + 1; j < n; ++j) out[j] = std::conj(out[n - j]);
}

void Transform::inverse_symmetric(std::span<const Complex> in, std::span<double> out) const {
    const int n = size();
    if (static_cast<int>(in.size()) != n || static_cast<int>(out.size()) != n) {
        throw std::invalid_argument("transform size mismatch");
    }
    // c2r may overwrite its input.
    thread_local std::vector<Complex> scratch;
    scratch.assign(in.begin(), in.begin() + n / 2 + 1);
    fftw_execute_dft_c2r(plans_->c2r, as_fftw(scratch.data()), out.data());
    const double scale = 1.0 / n;
    for (double& v : out) v *= scale;
}

ComplexVector Transform::to_spectral(std::span<const double> values) const {
    ComplexVector out(size());
    forward(values, out);
    return out;
}

RealVector Transform::to_physical(std::span<const Complex> coeffs, double* discarded_imag) const {
    const int n = size();
    if (static_cast<int>(coeffs.size()) != n) {
        throw std::invalid_argument("transform size mismatch");
    }
    ComplexVector in(coeffs.begin(), coeffs.end());
    ComplexVector out(n);
    fftw_execute_dft(plans_->c2c_inverse, as_fftw(in.data()), as_fftw(out.data()));
    RealVector result(n);
    double worst = 0.0;
    const double scale = 1.0 / n;
    for (int j = 0; j < n; ++j) {
        result[j] = out[j].real() * scale;
        worst = std::max(worst, std::abs(out[j].imag() * scale));
    }
    if (discarded_imag) *discarded_imag = worst;
    return result;
}

ComplexVector spectral_derivative(const Grid& grid, std::span<const Complex> coeffs, int order) {
    if (order < 1) throw std::invalid_argument("derivative order must be positive");
    if (static_cast<int>(coeffs.size()) != grid.size()) {
        throw std::invalid_argument("coefficient count does not match grid");
    }
    const auto& k = grid.wavenumbers();
    ComplexVector out(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        Complex factor(1.0, 0.0);
        const Complex ik(0.0, k[j]);
        for (int p = 0; p < order; ++p) factor *= ik;
        out[j] = factor * coeffs[j];
    }
    return out;
}

ComplexVector spectral_antiderivative(const Grid& grid, std::span<const Complex> coeffs) {
    if (static_cast<int>(coeffs.size()) != grid.size()) {
        throw std::invalid_argument("coefficient count does not match grid");
    }
    const auto& k = grid.wavenumbers();
    ComplexVector out(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        out[j] = k[j] == 0.0 ? Complex(0.0, 0.0) : coeffs[j] / Complex(0.0, k[j]);
    }
    return out;
}

void dealias_two_thirds(const Grid& grid, std::span<Complex> coeffs) {
    const int n = grid.size();
    const int cutoff = n / 3;
    for (int j = 0; j < n; ++j) {
        const int m = j <= n / 2 ? j : n - j;
        if (m > cutoff) coeffs[j] = 0.0;
    }
}

RealVector derivative(const Transform& transform, std::span<const double> values, int order) {
    const auto coeffs = transform.to_spectral(values);
    return transform.to_physical(spectral_derivative(transform.grid(), coeffs, order));
}

RealVector antiderivative(const Transform& transform, std::span<const double> values) {
    const auto coeffs = transform.to_spectral(values);
    return transform.to_physical(spectral_antiderivative(transform.grid(), coeffs));
}

double conjugate_symmetry_defect(std::span<const Complex> coeffs) {
    const std::size_t n = coeffs.size();
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t mirror = j == 0 ? 0 : n - j;
        worst = std::max(worst, std::abs(coeffs[j] - std::conj(coeffs[mirror])));
    }
    return worst;
}

}  // namespace bsq
