#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "bsq/spectral.hpp"

namespace bsq {

/// One saved state on a grid, as written to and read from snapshot files.
///
/// File layout: `key=value` header lines (n, dx, t, alpha, beta, froude,
/// sponge, plus stationary/amplitude/residual/iterations for Newton output)
/// followed by n rows `x eta u`, every number printed with 17 significant
/// digits.
struct Snapshot {
    int n = 0;
    double dx = 0.0;
    double time = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double froude = 0.0;
    bool sponge = false;
    bool stationary = false;
    std::optional<double> amplitude;
    std::optional<double> residual;
    std::optional<int> iterations;
    RealVector x;
    RealVector eta;
    RealVector u;

    Grid grid() const { return Grid(n, dx); }
};

class SnapshotFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_snapshot(std::ostream& out, const Snapshot& snapshot);
void write_snapshot(const std::filesystem::path& path, const Snapshot& snapshot);
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::filesystem::path& path);

/// "snapshot_000042.dat"
std::string snapshot_filename(long index);

/// Number formatted with 17 significant digits.
std::string format_double(double value);

}  // namespace bsq
