#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace bsq {

using RealVector = std::vector<double>;
using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Uniform periodic grid on [-L, L) with its spectral frequency vector.
///
/// Points are x_j = (j - n/2) dx, so x_0 = -L and x_{n/2} = 0. Two grids that
/// share dx therefore produce bit-identical coordinates on their overlap.
/// Wavenumbers follow the integer pattern (0, 1, ..., n/2-1, 0, -n/2+1, ..., -1)
/// scaled by dk = 2 pi / (n dx); the Nyquist slot is zero.
class Grid {
public:
    Grid(int n, double dx);

    int size() const { return n_; }
    double dx() const { return dx_; }
    double dk() const { return dk_; }
    double half_length() const { return half_length_; }
    int center_index() const { return n_ / 2; }

    const RealVector& points() const { return points_; }
    const RealVector& wavenumbers() const { return wavenumbers_; }

    /// Index of the grid point at coordinate x, or -1 if x is not a grid point
    /// (to within `tol`).
    int index_of(double x, double tol = 1e-12) const;

    bool operator==(const Grid& other) const { return n_ == other.n_ && dx_ == other.dx_; }

private:
    int n_;
    double dx_;
    double dk_;
    double half_length_;
    RealVector points_;
    RealVector wavenumbers_;
};

Grid make_grid(int n, double dx);

/// Forward/inverse discrete Fourier transforms for one grid size.
///
/// Convention: the forward transform is unnormalized (a constant field c maps
/// to coefficient[0] = n c), the inverse divides by n. This is the same pairing
/// as MATLAB's fft/ifft. Coefficients are stored for all n modes in FFT order.
///
/// Instances are immutable after construction and may be shared between
/// threads; every call works on caller-owned buffers.
class Transform {
public:
    explicit Transform(const Grid& grid);
    ~Transform();
    Transform(const Transform&) = delete;
    Transform& operator=(const Transform&) = delete;

    const Grid& grid() const { return grid_; }
    int size() const { return grid_.size(); }

    ComplexVector to_spectral(std::span<const double> values) const;

    /// Inverse transform followed by projection onto the real part. When
    /// `discarded_imag` is non-null it receives the largest imaginary magnitude
    /// that was dropped.
    RealVector to_physical(std::span<const Complex> coeffs, double* discarded_imag = nullptr) const;

    /// Buffer-based variants used by the solvers' inner loops.
    void forward(std::span<const double> in, std::span<Complex> out) const;

    /// Inverse transform assuming `in` is conjugate symmetric. Only the first
    /// n/2 + 1 coefficients are read, which gives the real part of the full
    /// inverse when the symmetry holds.
    void inverse_symmetric(std::span<const Complex> in, std::span<double> out) const;

private:
    struct Plans;

    Grid grid_;
    std::unique_ptr<Plans> plans_;
};

/// Multiplies coefficient j by (i k_j)^order.
ComplexVector spectral_derivative(const Grid& grid, std::span<const Complex> coeffs, int order);

/// Divides coefficient j by (i k_j) where k_j != 0; the mean and Nyquist
/// coefficients become exactly zero.
ComplexVector spectral_antiderivative(const Grid& grid, std::span<const Complex> coeffs);

/// Zeroes every mode with |m| > n/3 (2/3 rule). Not used by default.
void dealias_two_thirds(const Grid& grid, std::span<Complex> coeffs);

/// Physical-space convenience wrappers.
RealVector derivative(const Transform& transform, std::span<const double> values, int order);
RealVector antiderivative(const Transform& transform, std::span<const double> values);

/// Largest |c_j - conj(c_{n-j})|; zero for the transform of real data.
double conjugate_symmetry_defect(std::span<const Complex> coeffs);

}  // namespace bsq
