#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>

#include "bsq/harness.hpp"
#include "bsq/snapshot.hpp"
#include "bsq/spectral.hpp"
#include "bsq/sponge.hpp"
#include "bsq/stationary.hpp"
#include "bsq/time_solver.hpp"

namespace py = pybind11;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

bsq::RealVector to_vector(const RealArray& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
    return bsq::RealVector(a.data(), a.data() + a.size());
}

bsq::ComplexVector to_complex_vector(const ComplexArray& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
    return bsq::ComplexVector(a.data(), a.data() + a.size());
}

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
    py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::dict solution_dict(const bsq::StationarySolution& s) {
    py::dict d;
    d["eta"] = to_array(s.eta);
    d["u"] = to_array(s.u);
    d["froude"] = s.froude;
    d["amplitude"] = s.amplitude;
    d["residual"] = s.residual;
    d["iterations"] = s.iterations;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pseudospectral Boussinesq solver with a sponge layer";

    py::register_exception<bsq::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<bsq::BlowUpError>(m, "BlowUpError", PyExc_RuntimeError);
    py::register_exception<bsq::NewtonDivergence>(m, "NewtonDivergence", PyExc_RuntimeError);
    py::register_exception<bsq::SingularJacobian>(m, "SingularJacobian", PyExc_RuntimeError);
    py::register_exception<bsq::SnapshotFormatError>(m, "SnapshotFormatError", PyExc_ValueError);

    py::class_<bsq::Grid>(m, "Grid")
        .def(py::init<int, double>(), py::arg("n"), py::arg("dx"))
        .def_property_readonly("n", &bsq::Grid::size)
        .def_property_readonly("dx", &bsq::Grid::dx)
        .def_property_readonly("dk", &bsq::Grid::dk)
        .def_property_readonly("half_length", &bsq::Grid::half_length)
        .def_property_readonly("points", [](const bsq::Grid& g) { return to_array(g.points()); })
        .def_property_readonly("wavenumbers", [](const bsq::Grid& g) { return to_array(g.wavenumbers()); })
        .def("__repr__", [](const bsq::Grid& g) {
            return "Grid(n=" + std::to_string(g.size()) + ", dx=" + bsq::format_double(g.dx()) + ")";
        });

    m.def("to_spectral", [](const bsq::Grid& g, const RealArray& values) {
        return to_array(bsq::Transform(g).to_spectral(to_vector(values)));
    }, py::arg("grid"), py::arg("values"));
    m.def("to_physical", [](const bsq::Grid& g, const ComplexArray& coeffs) {
        return to_array(bsq::Transform(g).to_physical(to_complex_vector(coeffs)));
    }, py::arg("grid"), py::arg("coeffs"));
    m.def("derivative", [](const bsq::Grid& g, const RealArray& values, int order) {
        return to_array(bsq::derivative(bsq::Transform(g), to_vector(values), order));
    }, py::arg("grid"), py::arg("values"), py::arg("order") = 1);
    m.def("antiderivative", [](const bsq::Grid& g, const RealArray& values) {
        return to_array(bsq::antiderivative(bsq::Transform(g), to_vector(values)));
    }, py::arg("grid"), py::arg("values"));

    m.def("sponge_profile", [](double a1, double x_left, double x_right, const bsq::Grid& g) {
        return to_array(bsq::sponge_profile(a1, x_left, x_right, g).samples);
    }, py::arg("a1"), py::arg("x_left"), py::arg("x_right"), py::arg("grid"));

    m.def("damped_wave_exact",
          [](const std::function<double(double)>& f, const std::function<double(double)>& g, double b, double x,
             double t) { return bsq::damped_wave_exact({f, g, b}, x, t); },
          py::arg("f"), py::arg("g"), py::arg("b"), py::arg("x"), py::arg("t"));
    m.def("damped_wave_gaussian", [](double b, const RealArray& x, double t) {
        bsq::DampedWaveProblem problem{[](double s) { return std::exp(-s * s); }, [](double) { return 0.0; }, b};
        bsq::RealVector out;
        for (double xi : to_vector(x)) out.push_back(bsq::damped_wave_exact(problem, xi, t));
        return to_array(out);
    }, py::arg("b"), py::arg("x"), py::arg("t"));

    m.def("kdv_initial_guess", [](double amplitude, double alpha, double beta, const bsq::Grid& g) {
        const auto guess = bsq::kdv_initial_guess(amplitude, {alpha, beta, alpha, 0.0}, g);
        return py::make_tuple(to_array(guess.eta), to_array(guess.u), guess.froude);
    }, py::arg("amplitude"), py::arg("alpha"), py::arg("beta"), py::arg("grid"));

    m.def("solve_stationary",
          [](double amplitude, double alpha, double beta, int n, double dx, double tol, int max_iter, double fd_step) {
              const bsq::Grid grid(n, dx);
              const bsq::PhysicalParams params{alpha, beta, alpha, 0.0};
              bsq::NewtonOptions options;
              options.tol = tol;
              options.max_iter = max_iter;
              options.fd_step = fd_step;
              py::gil_scoped_release release;
              const auto s = bsq::newton_solve(bsq::kdv_initial_guess(amplitude, params, grid), amplitude, params,
                                               grid, options);
              py::gil_scoped_acquire acquire;
              return solution_dict(s);
          },
          py::arg("amplitude") = 0.44, py::arg("alpha") = 0.01, py::arg("beta") = 0.01, py::arg("n") = 1024,
          py::arg("dx") = 0.2, py::arg("tol") = 1e-10, py::arg("max_iter") = 100, py::arg("fd_step") = 1e-10);

    m.def("evolve",
          [](const bsq::Grid& grid, const RealArray& eta0, const RealArray& u0, double froude, double alpha,
             double beta, double dt, double t_final, double snapshot_interval, std::optional<double> sponge_a1,
             double sponge_margin, std::optional<RealArray> topography) {
              bsq::EvolutionConfig config;
              config.grid = grid;
              config.params = {alpha, beta, alpha, froude};
              config.dt = dt;
              config.t_final = t_final;
              config.snapshot_interval = snapshot_interval;
              config.initial = {to_vector(eta0), to_vector(u0), 0.0};
              if (sponge_a1) config.sponge = bsq::sponge_with_margin(*sponge_a1, sponge_margin, grid);
              if (topography) config.forcing.topography = to_vector(*topography);
              std::vector<bsq::WaveState> states;
              {
                  py::gil_scoped_release release;
                  states = bsq::evolve(config);
              }
              py::list out;
              for (const auto& s : states) out.append(py::make_tuple(s.time, to_array(s.eta), to_array(s.u)));
              return out;
          },
          py::arg("grid"), py::arg("eta0"), py::arg("u0"), py::arg("froude"), py::arg("alpha") = 0.01,
          py::arg("beta") = 0.01, py::arg("dt") = 0.01, py::arg("t_final"), py::arg("snapshot_interval"),
          py::arg("sponge_a1") = py::none(), py::arg("sponge_margin") = 12.4, py::arg("topography") = py::none());

    py::class_<bsq::Snapshot>(m, "Snapshot")
        .def_readonly("n", &bsq::Snapshot::n)
        .def_readonly("dx", &bsq::Snapshot::dx)
        .def_readonly("time", &bsq::Snapshot::time)
        .def_readonly("froude", &bsq::Snapshot::froude)
        .def_readonly("sponge", &bsq::Snapshot::sponge)
        .def_readonly("stationary", &bsq::Snapshot::stationary)
        .def_property_readonly("x", [](const bsq::Snapshot& s) { return to_array(s.x); })
        .def_property_readonly("eta", [](const bsq::Snapshot& s) { return to_array(s.eta); })
        .def_property_readonly("u", [](const bsq::Snapshot& s) { return to_array(s.u); });

    m.def("read_snapshot", [](const std::filesystem::path& p) { return bsq::read_snapshot(p); }, py::arg("path"));
    m.def("relative_error",
          [](const bsq::Snapshot& nosponge, const bsq::Snapshot& sponge, double x_min, double x_max) {
              return bsq::relative_error(nosponge, sponge, {x_min, x_max});
          },
          py::arg("nosponge"), py::arg("sponge"), py::arg("x_min") = -80.0, py::arg("x_max") = 80.0);

    m.def("run_scenario", [](const std::filesystem::path& config_path, std::optional<std::filesystem::path> out_dir) {
        const auto config = bsq::load_scenario_config(config_path);
        bsq::ScenarioResult r;
        {
            py::gil_scoped_release release;
            r = bsq::run_scenario(config, out_dir);
        }
        py::dict d;
        d["froude"] = r.froude;
        d["times"] = to_array(r.errors.times);
        d["errors"] = to_array(r.errors.values);
        d["amplitude"] = to_array(r.with_sponge.amplitude);
        d["boundary"] = to_array(r.with_sponge.boundary);
        py::list checks;
        for (const auto& c : r.checks) checks.append(py::make_tuple(c.name, c.passed, c.detail));
        d["checks"] = checks;
        d["passed"] = r.all_passed();
        return d;
    }, py::arg("config"), py::arg("out_dir") = py::none());
}
