#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "photmol/boundstate.hpp"
#include "photmol/errors.hpp"
#include "photmol/gate.hpp"
#include "photmol/keldysh.hpp"
#include "photmol/tmatrix.hpp"
#include "photmol/units.hpp"

namespace py = pybind11;
using namespace photmol;
using cplx = std::complex<double>;

namespace {

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
    return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

SpectralGrid spectral_from(const GridSpec& grid, const py::array_t<cplx>& values, cplx singular) {
    auto r = values.unchecked<1>();
    SpectralGrid out{grid, std::vector<cplx>(static_cast<std::size_t>(r.shape(0))), singular};
    for (py::ssize_t i = 0; i < r.shape(0); ++i) out.values[static_cast<std::size_t>(i)] = r(i);
    return out;
}

TcMethod method_from(const std::string& name) {
    if (name == "asymptotic") return TcMethod::asymptotic;
    if (name == "numeric") return TcMethod::numeric;
    throw InvalidArgument("method must be 'asymptotic' or 'numeric'");
}

}  // namespace

PYBIND11_MODULE(_photmol, m) {
    m.doc() = "Thermal photon molecules in waveguides";

    static py::exception<Error> base(m, "PhotmolError", PyExc_RuntimeError);
    static py::exception<InvalidArgument> invalid(m, "InvalidArgument", base.ptr());
    static py::exception<DistributionPole> pole(m, "DistributionPole", base.ptr());
    static py::exception<CoverageError> coverage(m, "CoverageError", base.ptr());
    static py::exception<EdgeTruncation> edge(m, "EdgeTruncation", base.ptr());
    static py::exception<QuadratureError> quadrature(m, "QuadratureError", base.ptr());
    static py::exception<NoBracket> bracket(m, "NoBracket", base.ptr());
    static py::exception<SingularPropagator> singular(m, "SingularPropagator", base.ptr());
    static py::exception<DimensionMismatch> dims(m, "DimensionMismatch", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object type = base;
            if (dynamic_cast<const InvalidArgument*>(&e)) type = invalid;
            else if (dynamic_cast<const DistributionPole*>(&e)) type = pole;
            else if (dynamic_cast<const CoverageError*>(&e)) type = coverage;
            else if (dynamic_cast<const EdgeTruncation*>(&e)) type = edge;
            else if (dynamic_cast<const QuadratureError*>(&e)) type = quadrature;
            else if (dynamic_cast<const NoBracket*>(&e)) type = bracket;
            else if (dynamic_cast<const SingularPropagator*>(&e)) type = singular;
            else if (dynamic_cast<const DimensionMismatch*>(&e)) type = dims;
            py::object instance = type(e.what());
            instance.attr("code") = e.code();
            PyErr_SetObject(type.ptr(), instance.ptr());
        }
    });

    py::class_<WaveguideParams>(m, "WaveguideParams")
        .def(py::init<>())
        .def_readwrite("omega0", &WaveguideParams::omega0)
        .def_readwrite("v_e", &WaveguideParams::v_e)
        .def_readwrite("v", &WaveguideParams::v)
        .def_readwrite("attractive", &WaveguideParams::attractive)
        .def_readwrite("Delta", &WaveguideParams::Delta)
        .def_readwrite("mu", &WaveguideParams::mu)
        .def("coupling", &WaveguideParams::coupling)
        .def("signed_coupling", &WaveguideParams::signed_coupling)
        .def("validate", &WaveguideParams::validate);

    py::class_<ThermalState>(m, "ThermalState")
        .def(py::init<>())
        .def(py::init([](double beta, double mu) { return ThermalState{beta, mu}; }), py::arg("beta"),
             py::arg("mu") = 0.0)
        .def_static("from_kelvin", &ThermalState::from_kelvin, py::arg("kelvin"), py::arg("mu") = 0.0)
        .def_readwrite("beta", &ThermalState::beta)
        .def_readwrite("mu", &ThermalState::mu)
        .def("kelvin", &ThermalState::kelvin);

    m.def("bose_function", &bose_function);
    m.def("coth_factor", &coth_factor);
    m.def("rad_per_s_from_ghz", [](double ghz, bool angular) {
        return units::rad_per_s_from_ghz(ghz, angular ? units::FrequencyConvention::angular
                                                      : units::FrequencyConvention::ordinary);
    }, py::arg("ghz"), py::arg("angular") = true);

    // T-matrix
    m.def("coth_integral", [](double x_min, double lambda) { return coth_integral(x_min, lambda); });
    m.def("pair_propagator_upsilon",
          py::overload_cast<double, std::complex<double>, const ThermalState&>(&pair_propagator_upsilon));
    m.def("g2_retarded_numeric", [](double epsilon, cplx zeta, const ThermalState& t, double broadening) {
        const G2Result r = g2_retarded_numeric(epsilon, zeta, t, broadening);
        py::dict d;
        d["value"] = r.value;
        d["error_estimate"] = r.error_estimate;
        d["window_half_width"] = r.window_half_width;
        return d;
    });
    m.def("tmatrix_retarded_1d", [](cplx zeta, const WaveguideParams& p, const ThermalState& t, double x_min) {
        TMatrixQuery q;
        q.zeta = zeta;
        q.params = p;
        q.thermal = t;
        q.x_min = x_min;
        const TMatrixValue v = tmatrix_retarded_1d(q);
        py::dict d;
        d["value"] = v.value;
        d["denominator"] = v.denominator;
        d["near_pole"] = v.near_pole;
        return d;
    }, py::arg("zeta"), py::arg("params"), py::arg("thermal"), py::arg("x_min") = 1.0);
    m.def("critical_temperature", [](const WaveguideParams& p, const std::string& method, double x_min) {
        const CriticalPoint c = critical_temperature(p, method_from(method), x_min);
        py::dict d;
        d["t_c_kelvin"] = c.t_c_kelvin;
        d["lambda_c"] = c.lambda_c;
        d["g"] = c.g;
        d["residual"] = c.residual;
        return d;
    }, py::arg("params"), py::arg("method") = "asymptotic", py::arg("x_min") = 1.0);
    m.def("denominator_scan", [](const WaveguideParams& p, double t_min, double t_max, std::size_t points,
                                 double x_min) {
        const auto rows = denominator_scan(TemperatureRange{t_min, t_max, points, true}, p, x_min);
        std::vector<double> t, lambda, d;
        std::vector<int> change;
        for (const auto& r : rows) {
            t.push_back(r.t_kelvin);
            lambda.push_back(r.lambda);
            d.push_back(r.denominator);
            change.push_back(r.sign_change ? 1 : 0);
        }
        py::dict out;
        out["t_kelvin"] = to_array(t);
        out["lambda"] = to_array(lambda);
        out["denominator"] = to_array(d);
        out["sign_change"] = to_array(change);
        return out;
    }, py::arg("params"), py::arg("t_min_kelvin"), py::arg("t_max_kelvin"), py::arg("points"), py::arg("x_min") = 1.0);

    // Keldysh
    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](double lo, double hi, std::size_t n) { return GridSpec{lo, hi, n}; }))
        .def_readwrite("omega_min", &GridSpec::omega_min)
        .def_readwrite("omega_max", &GridSpec::omega_max)
        .def_readwrite("n_points", &GridSpec::n_points)
        .def("omega", [](const GridSpec& g) {
            std::vector<double> w(g.n_points);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = g.omega(i);
            return to_array(w);
        });
    m.def("lorentzian_spectral", [](double epsilon, double eta, const GridSpec& g) {
        return to_array(lorentzian_spectral(epsilon, eta, g).values);
    });
    m.def("retarded_from_spectral", [](const GridSpec& g, const py::array_t<cplx>& a, double eta, cplx singular) {
        return to_array(retarded_from_spectral(spectral_from(g, a, singular), eta).values);
    }, py::arg("grid"), py::arg("spectral"), py::arg("eta") = 0.0, py::arg("singular") = cplx{});
    m.def("advanced_from_spectral", [](const GridSpec& g, const py::array_t<cplx>& a, double eta, cplx singular) {
        return to_array(advanced_from_spectral(spectral_from(g, a, singular), eta).values);
    }, py::arg("grid"), py::arg("spectral"), py::arg("eta") = 0.0, py::arg("singular") = cplx{});
    m.def("fdt_components", [](const GridSpec& g, const py::array_t<cplx>& a, const ThermalState& t, int m_mu,
                               bool mask) {
        const FdtComponents c = fdt_components(spectral_from(g, a, {}), t, m_mu, mask ? PoleMask::zero : PoleMask::reject);
        return py::make_tuple(to_array(c.lesser.values), to_array(c.greater.values), c.masked);
    }, py::arg("grid"), py::arg("spectral"), py::arg("thermal"), py::arg("mu_multiplier") = 1, py::arg("mask") = false);
    m.def("time_domain_retarded", [](const GridSpec& g, const py::array_t<cplx>& r) {
        const TimeSeries ts = time_domain_retarded(spectral_from(g, r, {}));
        py::dict d;
        d["t"] = to_array(ts.t);
        d["values"] = to_array(ts.values);
        d["peak"] = ts.peak;
        d["causality_violation"] = ts.causality_violation;
        return d;
    });

    // bound state
    py::class_<UniformGrid>(m, "UniformGrid")
        .def_static("centered", &UniformGrid::centered)
        .def_static("spanning", &UniformGrid::spanning)
        .def_readwrite("x0", &UniformGrid::x0)
        .def_readwrite("dx", &UniformGrid::dx)
        .def_readwrite("n", &UniformGrid::n)
        .def("box_length", &UniformGrid::box_length);
    py::class_<PairAmplitude>(m, "PairAmplitude")
        .def_readonly("grid", &PairAmplitude::grid)
        .def_property_readonly("values", [](const PairAmplitude& p) { return to_array(p.values); })
        .def("norm", &PairAmplitude::norm);
    m.def("chi_delta_bound", &chi_delta_bound);
    m.def("momentum_amplitudes", [](const PairAmplitude& chi) {
        const MomentumAmplitude a = momentum_amplitudes(chi);
        return py::make_tuple(to_array(a.k), to_array(a.values));
    });
    auto field = [](const Field2D& f) {
        py::array_t<cplx> out({static_cast<py::ssize_t>(f.xa.n), static_cast<py::ssize_t>(f.xb.n)});
        std::copy(f.values.begin(), f.values.end(), out.mutable_data());
        return out;
    };
    m.def("molecule_wavefunction", [field](const PairAmplitude& chi, double K, const UniformGrid& xa,
                                           const UniformGrid& xb) { return field(molecule_wavefunction(chi, K, xa, xb)); });
    m.def("molecule_wavefunction_momentum", [field](const PairAmplitude& chi, double K, const UniformGrid& xa,
                                                    const UniformGrid& xb) {
        return field(molecule_wavefunction_momentum(chi, K, xa, xb));
    });
    m.def("nonlinear_phase", &nonlinear_phase);
    m.def("propagate_pair", [](double v, double v_e, double sigma, const UniformGrid& grid, cplx phi_in,
                               std::size_t grid_cells, double omega0) {
        PhaseOptions o;
        o.grid_cells = grid_cells;
        o.omega0 = omega0;
        const PhaseResult r = propagate_pair(v, v_e, sigma, grid, phi_in, o);
        py::dict d;
        d["theta"] = r.theta;
        d["sign"] = r.sign;
        d["theta_analytic"] = r.theta_analytic;
        d["amplitude_deviation"] = r.amplitude_deviation;
        d["theta_lab"] = r.theta_lab;
        d["xi"] = to_array(r.xi);
        d["phase"] = to_array(r.phase);
        d["phi"] = to_array(r.phi);
        d["grid_theta"] = r.grid.theta;
        d["grid_amplitude_deviation"] = r.grid.amplitude_deviation;
        return d;
    }, py::arg("v"), py::arg("v_e"), py::arg("sigma"), py::arg("grid"), py::arg("phi_in") = cplx(1.0, 0.0),
       py::arg("grid_cells") = 10000, py::arg("omega0") = 0.0);

    // gates
    m.def("cz_from_phase", &cz_from_phase);
    m.def("hadamard", &hadamard);
    m.def("identity_gate", &identity_gate);
    m.def("tensor", &tensor);
    m.def("compose", &compose);
    m.def("apply", &photmol::apply);
    m.def("cnot_reference", &cnot_reference);
    m.def("cnot_from_cz", &cnot_from_cz);
    m.def("unitarity_deviation", &unitarity_deviation);
    m.def("basis_labels", [] {
        const auto& b = basis_labels();
        return std::vector<std::string>(b.begin(), b.end());
    });
}
