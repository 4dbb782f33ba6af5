#include <doctest.h>

#include <sstream>

#include "bsq/snapshot.hpp"

using namespace bsq;

namespace {

Snapshot small_snapshot() {
    Snapshot s;
    s.n = 4;
    s.dx = 0.5;
    s.time = 8.8;
    s.alpha = 0.01;
    s.beta = 0.01;
    s.froude = -1.0022;
    s.sponge = true;
    s.x = {-1.0, -0.5, 0.0, 0.5};
    s.eta = {0.1, 1.0 / 3.0, 0.44, 1e-300};
    s.u = {-0.0, 2.0, -3.25, 0.123456789012345678};
    return s;
}

}  // namespace

TEST_CASE("snapshot round trip is exact") {
    const auto s = small_snapshot();
    std::stringstream buf;
    write_snapshot(buf, s);
    const auto r = read_snapshot(buf);
    CHECK(r.n == 4);
    CHECK(r.dx == s.dx);
    CHECK(r.time == s.time);
    CHECK(r.froude == s.froude);
    CHECK(r.sponge);
    CHECK_FALSE(r.stationary);
    CHECK(r.x == s.x);
    CHECK(r.eta == s.eta);
    CHECK(r.u == s.u);
    CHECK_FALSE(r.amplitude.has_value());
}

TEST_CASE("stationary metadata survives") {
    auto s = small_snapshot();
    s.stationary = true;
    s.amplitude = 0.44;
    s.residual = 3e-11;
    s.iterations = 7;
    std::stringstream buf;
    write_snapshot(buf, s);
    const auto r = read_snapshot(buf);
    CHECK(r.stationary);
    CHECK(*r.amplitude == 0.44);
    CHECK(*r.residual == 3e-11);
    CHECK(*r.iterations == 7);
}

TEST_CASE("malformed snapshots") {
    CHECK_THROWS_AS(read_snapshot(*std::make_unique<std::istringstream>("n=2\ndx=1\n0 0 0\n")),
                    SnapshotFormatError);
    CHECK_THROWS_AS(read_snapshot(*std::make_unique<std::istringstream>("n=1\ndx=1\nbogus=3\n0 0 0\n")),
                    SnapshotFormatError);
    CHECK_THROWS_AS(read_snapshot(*std::make_unique<std::istringstream>("n=1\ndx=1\n0 0\n")), SnapshotFormatError);
    CHECK_THROWS_AS(read_snapshot(*std::make_unique<std::istringstream>("n=1\ndx=1\n0 0 x\n")),
                    SnapshotFormatError);
    CHECK_THROWS_AS(read_snapshot(*std::make_unique<std::istringstream>("n=1\n0 0 0\n")), SnapshotFormatError);
    CHECK_THROWS_AS(read_snapshot(*std::make_unique<std::istringstream>("n=1\ndx=1\n0 0 0\nt=1\n")),
                    SnapshotFormatError);
    try {
        std::istringstream in("n=1\ndx=1\n0 0 nope\n");
        read_snapshot(in);
    } catch (const SnapshotFormatError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("file names") {
    CHECK(snapshot_filename(0) == "snapshot_000000.dat");
    CHECK(snapshot_filename(42) == "snapshot_000042.dat");
    CHECK(format_double(0.1) == "0.10000000000000001");
}
