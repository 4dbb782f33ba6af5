#include "bsq/stationary.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace bsq {

namespace {

double sech(double v) { return 1.0 / std::cosh(v); }

// Evaluates the reduced residual for the unknown vector
// z = (eta_hat_0..eta_hat_{n/2}, u_hat_0..u_hat_{n/2}, F), reusing buffers.
class ReducedSystem {
public:
    ReducedSystem(const Transform& transform, const PhysicalParams& params, double amplitude)
        : transform_(transform),
          params_(params),
          amplitude_(amplitude),
          n_(transform.size()),
          half_(n_ / 2),
          eta_hat_(n_),
          u_hat_(n_),
          prod_hat_(n_),
          sq_hat_(n_),
          eta_(n_),
          u_(n_),
          work_(n_) {}

    int dimension() const { return n_ + 3; }

    void expand(std::span<const double> z) {
        for (int j = 0; j <= half_; ++j) {
            eta_hat_[j] = z[j];
            u_hat_[j] = z[half_ + 1 + j];
        }
        for (int j = half_ + 1; j < n_; ++j) {
            eta_hat_[j] = eta_hat_[n_ - j];
            u_hat_[j] = u_hat_[n_ - j];
        }
    }

    /// Writes the residual into `out` and returns the largest discarded
    /// imaginary part.
    double evaluate(std::span<const double> z, std::span<double> out) {
        expand(z);
        const double froude = z[n_ + 2];
        transform_.inverse_symmetric(eta_hat_, eta_);
        transform_.inverse_symmetric(u_hat_, u_);
        for (int j = 0; j < n_; ++j) work_[j] = eta_[j] * u_[j];
        transform_.forward(work_, prod_hat_);
        for (int j = 0; j < n_; ++j) work_[j] = u_[j] * u_[j];
        transform_.forward(work_, sq_hat_);

        const auto& k = transform_.grid().wavenumbers();
        const double a = params_.alpha;
        const double b = params_.beta;
        double max_imag = 0.0;
        for (int j = 0; j <= half_; ++j) {
            const Complex g1 = u_hat_[j] + froude * eta_hat_[j] + a * prod_hat_[j];
            // -(beta/3) F (ik)^2 u = (beta/3) F k^2 u
            const Complex g2 = eta_hat_[j] + froude * u_hat_[j] + 0.5 * a * sq_hat_[j] +
                               (b / 3.0) * froude * k[j] * k[j] * u_hat_[j];
            out[j] = g1.real();
            out[half_ + 1 + j] = g2.real();
            max_imag = std::max({max_imag, std::abs(g1.imag()), std::abs(g2.imag())});
        }
        out[n_ + 2] = eta_[transform_.grid().center_index()] - amplitude_;
        return max_imag;
    }

    const ComplexVector& eta_hat() const { return eta_hat_; }
    const ComplexVector& u_hat() const { return u_hat_; }

private:
    const Transform& transform_;
    PhysicalParams params_;
    double amplitude_;
    int n_;
    int half_;
    ComplexVector eta_hat_, u_hat_, prod_hat_, sq_hat_;
    RealVector eta_, u_, work_;
};

double mean_abs(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) sum += std::abs(x);
    return sum / static_cast<double>(v.size());
}

}  // namespace

double StationaryResidual::mean_abs() const { return bsq::mean_abs(values); }

WaveGuess kdv_initial_guess(double amplitude, const PhysicalParams& params, const Grid& grid) {
    params.validate();
    if (amplitude < 0.0) throw std::invalid_argument("amplitude must be non-negative");
    const double A = amplitude;
    const double K = 0.5 * std::sqrt(3.0 * A * params.alpha / params.beta);
    const int n = grid.size();
    WaveGuess guess;
    guess.eta.resize(n);
    guess.u.resize(n);
    for (int j = 0; j < n; ++j) {
        const double kx = K * grid.points()[j];
        const double s = sech(kx);
        const double th = std::tanh(kx);
        const double eta = A * s * s;
        const double eta_xx = -2.0 * A * K * K * std::pow(s, 4) + 4.0 * A * K * K * s * s * th * th;
        guess.eta[j] = eta;
        guess.u[j] = eta - 0.25 * params.alpha * eta * eta + (params.beta / 6.0) * eta_xx;
    }
    guess.froude = -(1.0 + 0.5 * params.alpha * A);
    return guess;
}

StationaryResidual stationary_residual(std::span<const Complex> eta_hat, std::span<const Complex> u_hat,
                                       double froude, double amplitude, const PhysicalParams& params,
                                       const Transform& transform) {
    const int n = transform.size();
    const int half = n / 2;
    if (static_cast<int>(eta_hat.size()) != n || static_cast<int>(u_hat.size()) != n) {
        throw std::invalid_argument("spectral inputs do not match the grid");
    }
    const RealVector eta = transform.to_physical(eta_hat);
    const RealVector u = transform.to_physical(u_hat);
    RealVector work(n);
    for (int j = 0; j < n; ++j) work[j] = eta[j] * u[j];
    const ComplexVector prod_hat = transform.to_spectral(work);
    for (int j = 0; j < n; ++j) work[j] = u[j] * u[j];
    const ComplexVector sq_hat = transform.to_spectral(work);

    const auto& k = transform.grid().wavenumbers();
    StationaryResidual result;
    result.values.resize(n + 3);
    for (int j = 0; j <= half; ++j) {
        const Complex g1 = u_hat[j] + froude * eta_hat[j] + params.alpha * prod_hat[j];
        const Complex g2 = eta_hat[j] + froude * u_hat[j] + 0.5 * params.alpha * sq_hat[j] +
                           (params.beta / 3.0) * froude * k[j] * k[j] * u_hat[j];
        result.values[j] = g1.real();
        result.values[half + 1 + j] = g2.real();
        result.max_imag = std::max({result.max_imag, std::abs(g1.imag()), std::abs(g2.imag())});
    }
    result.values[n + 2] = eta[transform.grid().center_index()] - amplitude;
    return result;
}

double even_symmetry_defect(std::span<const double> values) {
    const std::size_t n = values.size();
    double worst = 0.0;
    for (std::size_t j = 1; j < n; ++j) worst = std::max(worst, std::abs(values[j] - values[n - j]));
    return worst;
}

StationarySolution newton_solve(const WaveGuess& guess, double amplitude, const PhysicalParams& params,
                                const Grid& grid, const NewtonOptions& options) {
    params.validate();
    const int n = grid.size();
    const int half = n / 2;
    if (static_cast<int>(guess.eta.size()) != n || static_cast<int>(guess.u.size()) != n) {
        throw std::invalid_argument("guess does not match the grid");
    }
    if (!(options.fd_step > 0.0) || !(options.tol > 0.0) || options.max_iter < 0) {
        throw std::invalid_argument("invalid Newton options");
    }
    double scale = 1.0;
    for (double v : guess.eta) scale = std::max(scale, std::abs(v));
    if (even_symmetry_defect(guess.eta) > 1e-10 * scale || even_symmetry_defect(guess.u) > 1e-10 * scale) {
        throw std::invalid_argument("Newton guess must be even about x = 0");
    }

    Transform transform(grid);
    ReducedSystem system(transform, params, amplitude);
    const int dim = system.dimension();

    Eigen::VectorXd z(dim);
    {
        const ComplexVector eta_hat = transform.to_spectral(guess.eta);
        const ComplexVector u_hat = transform.to_spectral(guess.u);
        for (int j = 0; j <= half; ++j) {
            z[j] = eta_hat[j].real();
            z[half + 1 + j] = u_hat[j].real();
        }
        z[n + 2] = guess.froude;
    }

    Eigen::VectorXd g(dim);
    Eigen::VectorXd g_delta(dim);
    Eigen::MatrixXd jacobian(dim, dim);
    Eigen::VectorXd z_delta(dim);
    RealVector eta_phys(n), u_phys(n);

    auto snapshot_fields = [&]() {
        system.expand(std::span<const double>(z.data(), dim));
        transform.inverse_symmetric(system.eta_hat(), eta_phys);
        transform.inverse_symmetric(system.u_hat(), u_phys);
    };

    for (int iter = 0;; ++iter) {
        const double max_imag = system.evaluate(std::span<const double>(z.data(), dim),
                                                std::span<double>(g.data(), dim));
        if (max_imag > 1e-10) {
            std::ostringstream msg;
            msg << "reduced residual lost reality (imaginary part " << max_imag << ")";
            throw std::runtime_error(msg.str());
        }
        const double residual = mean_abs(std::span<const double>(g.data(), dim));
        if (!std::isfinite(residual)) {
            throw NewtonDivergence("Newton residual is not finite", residual, iter);
        }
        if (options.on_iterate) {
            snapshot_fields();
            options.on_iterate(NewtonIterate{iter, residual, &eta_phys, &u_phys, z[n + 2]});
        }
        if (residual < options.tol) {
            snapshot_fields();
            StationarySolution solution;
            solution.eta = eta_phys;
            solution.u = u_phys;
            solution.froude = z[n + 2];
            solution.amplitude = amplitude;
            solution.residual = residual;
            solution.iterations = iter;
            return solution;
        }
        if (iter >= options.max_iter) {
            std::ostringstream msg;
            msg << "Newton did not converge in " << options.max_iter << " iterations (residual " << residual << ")";
            throw NewtonDivergence(msg.str(), residual, iter);
        }

        // Perturbing reduced coefficient j moves both mirror modes j and n-j of
        // the full spectrum, which keeps every column even-symmetric.
        for (int col = 0; col < dim; ++col) {
            z_delta = z;
            z_delta[col] += options.fd_step;
            system.evaluate(std::span<const double>(z_delta.data(), dim),
                            std::span<double>(g_delta.data(), dim));
            jacobian.col(col) = (g_delta - g) / options.fd_step;
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(jacobian);
        const double rcond = lu.rcond();
        if (!(rcond > std::numeric_limits<double>::epsilon())) {
            std::ostringstream msg;
            msg << "Jacobian is singular at iteration " << iter << " (rcond " << rcond << ")";
            throw SingularJacobian(msg.str());
        }
        const Eigen::VectorXd step = lu.solve(-g);
        if (!step.allFinite()) throw SingularJacobian("Newton step is not finite");
        z += step;
    }
}

}  // namespace bsq
