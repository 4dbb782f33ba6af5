#pragma once

#include <stdexcept>

namespace bsq {

/// Dimensionless model parameters. `froude` is the frame speed F.
struct PhysicalParams {
    double alpha = 0.01;
    double beta = 0.01;
    double epsilon = 0.01;
    double froude = 0.0;

    void validate() const {
        if (!(alpha > 0.0) || !(beta > 0.0) || !(epsilon > 0.0)) {
            throw std::invalid_argument("alpha, beta and epsilon must be positive");
        }
    }
};

}  // namespace bsq
