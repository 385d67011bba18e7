#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lineshape/crlb.hpp"
#include "lineshape/estimation.hpp"
#include "lineshape/io.hpp"
#include "lineshape/pipeline.hpp"
#include "lineshape/pseudo_true.hpp"
#include "lineshape/signal_model.hpp"
#include "lineshape/spectrum_test.hpp"

namespace py = pybind11;
using namespace lineshape;

PYBIND11_MODULE(lineshape, m) {
    m.doc() = "Estimation and classification of polynomially damped complex sinusoids";

    py::enum_<ModelClass>(m, "ModelClass")
        .value("Cisoid", ModelClass::Cisoid)
        .value("Lorentzian", ModelClass::Lorentzian)
        .value("Voigt", ModelClass::Voigt);

    py::class_<ComponentParams>(m, "ComponentParams")
        .def(py::init([](double r, double phi, double omega, double beta, double gamma,
                         ModelClass cls) {
                 return validated(ComponentParams{r, phi, omega, beta, gamma, cls});
             }),
             py::arg("r") = 1.0, py::arg("phi") = 0.0, py::arg("omega") = 0.0,
             py::arg("beta") = 0.0, py::arg("gamma") = 0.0,
             py::arg("cls") = ModelClass::Cisoid)
        .def_readwrite("r", &ComponentParams::r)
        .def_readwrite("phi", &ComponentParams::phi)
        .def_readwrite("omega", &ComponentParams::omega)
        .def_readwrite("beta", &ComponentParams::beta)
        .def_readwrite("gamma", &ComponentParams::gamma)
        .def_readwrite("cls", &ComponentParams::cls)
        .def("__repr__", [](const ComponentParams& p) {
            return "ComponentParams(r=" + std::to_string(p.r) +
                   ", phi=" + std::to_string(p.phi) + ", omega=" + std::to_string(p.omega) +
                   ", beta=" + std::to_string(p.beta) + ", gamma=" + std::to_string(p.gamma) +
                   ", cls=" + to_string(p.cls) + ")";
        });

    py::class_<TimeGrid>(m, "TimeGrid")
        .def_static("unit", &TimeGrid::unit, py::arg("n"))
        .def(py::init([](std::vector<double> times) {
                 TimeGrid g;
                 g.times = std::move(times);
                 g.validate();
                 return g;
             }),
             py::arg("times"))
        .def_readonly("times", &TimeGrid::times)
        .def("__len__", &TimeGrid::size);

    py::class_<SignalRecord>(m, "SignalRecord")
        .def(py::init([](std::vector<cplx> samples, TimeGrid grid) {
                 SignalRecord r;
                 r.samples = std::move(samples);
                 r.grid = std::move(grid);
                 return r;
             }),
             py::arg("samples"), py::arg("grid"))
        .def_readwrite("samples", &SignalRecord::samples)
        .def_readwrite("grid", &SignalRecord::grid)
        .def_readwrite("noise_variance", &SignalRecord::noise_variance);

    m.def("envelope", &envelope, py::arg("t"), py::arg("beta"), py::arg("gamma"));
    m.def("component_value", &component_value, py::arg("t"), py::arg("psi"));
    m.def("synthesize", &synthesize, py::arg("components"), py::arg("grid"),
          py::arg("sigma2"), py::arg("seed"));
    m.def("nls_cost", &nls_cost, py::arg("signal"), py::arg("components"));
    m.def("reconstruct", &reconstruct, py::arg("components"), py::arg("grid"));

    py::class_<Periodogram>(m, "Periodogram")
        .def_readonly("values", &Periodogram::values)
        .def_readonly("n", &Periodogram::n);
    py::class_<NeighborhoodSet>(m, "NeighborhoodSet")
        .def_readonly("center_omega", &NeighborhoodSet::center_omega)
        .def_readonly("indices", &NeighborhoodSet::indices)
        .def_readonly("half_width", &NeighborhoodSet::half_width);
    py::class_<WhitenessVerdict>(m, "WhitenessVerdict")
        .def_readonly("xi", &WhitenessVerdict::xi)
        .def_readonly("d1", &WhitenessVerdict::d1)
        .def_readonly("d2", &WhitenessVerdict::d2)
        .def_readonly("p_value", &WhitenessVerdict::p_value)
        .def_readonly("sufficient", &WhitenessVerdict::sufficient)
        .def_readonly("alpha_level", &WhitenessVerdict::alpha_level);
    py::class_<XiStat>(m, "XiStat")
        .def_readonly("xi", &XiStat::xi)
        .def_readonly("i_count", &XiStat::i_count)
        .def_readonly("c_count", &XiStat::c_count);
    py::class_<ClassifyOptions>(m, "ClassifyOptions")
        .def(py::init<>())
        .def_readwrite("exclusion_width", &ClassifyOptions::exclusion_width)
        .def_readwrite("ring_width", &ClassifyOptions::ring_width)
        .def_readwrite("peak_half_width", &ClassifyOptions::peak_half_width);

    m.def("periodogram", &periodogram, py::arg("signal"));
    m.def("neighborhood", &neighborhood, py::arg("omega"), py::arg("half_width"), py::arg("n"));
    m.def("xi_statistic", &xi_statistic, py::arg("periodogram"), py::arg("neighborhoods"),
          py::arg("target"));
    m.def("f_cdf", &f_cdf, py::arg("x"), py::arg("d1"), py::arg("d2"));
    m.def("f_upper_quantile", &f_upper_quantile, py::arg("alpha"), py::arg("d1"), py::arg("d2"));
    m.def("f_quantile_test", &f_quantile_test, py::arg("xi"), py::arg("d1"), py::arg("d2"),
          py::arg("alpha"));
    m.def("classify_residual", &classify_residual, py::arg("residual"), py::arg("omegas"),
          py::arg("half_width"), py::arg("alpha"), py::arg("options") = ClassifyOptions{});

    py::class_<PseudoTrueResult>(m, "PseudoTrueResult")
        .def_readonly("r0", &PseudoTrueResult::r0)
        .def_readonly("phi0", &PseudoTrueResult::phi0)
        .def_readonly("omega0", &PseudoTrueResult::omega0)
        .def_readonly("beta0", &PseudoTrueResult::beta0)
        .def_readonly("bracket", &PseudoTrueResult::bracket);
    m.def("expected_fit_cost", &expected_fit_cost, py::arg("theta"), py::arg("psi"),
          py::arg("grid"));
    m.def("pseudo_true_cisoid", &pseudo_true_cisoid, py::arg("psi"), py::arg("grid"));
    m.def("psi_sign_function", &psi_sign_function, py::arg("beta0"), py::arg("psi"),
          py::arg("grid"));
    m.def("pseudo_true_lorentzian", &pseudo_true_lorentzian, py::arg("psi"), py::arg("grid"),
          py::arg("tol") = 0.0);

    py::class_<FitConfig>(m, "FitConfig")
        .def(py::init<>())
        .def_readwrite("max_components", &FitConfig::max_components)
        .def_readwrite("omega_pad", &FitConfig::omega_pad)
        .def_readwrite("beta_bins", &FitConfig::beta_bins)
        .def_readwrite("gamma_bins", &FitConfig::gamma_bins)
        .def_readwrite("refine_tol", &FitConfig::refine_tol)
        .def_readwrite("refine_max_iters", &FitConfig::refine_max_iters)
        .def_readwrite("cycle_passes", &FitConfig::cycle_passes)
        .def_readwrite("neighborhood_width", &FitConfig::neighborhood_width)
        .def_readwrite("alpha_stop", &FitConfig::alpha_stop)
        .def_readwrite("separation_width", &FitConfig::separation_width);
    py::class_<FitResult>(m, "FitResult")
        .def_readonly("components", &FitResult::components)
        .def_readonly("residual", &FitResult::residual)
        .def_readonly("cost", &FitResult::cost);
    m.def("solve_amp_phase", &solve_amp_phase, py::arg("signal"), py::arg("omega"),
          py::arg("beta"), py::arg("gamma"));
    m.def(
        "fit_single",
        [](const SignalRecord& signal, ModelClass cls, const FitConfig& config) {
            return fit_single(signal, cls, config);
        },
        py::arg("signal"), py::arg("cls"), py::arg("config") = FitConfig{});
    m.def(
        "fit_multi",
        [](const SignalRecord& signal, ModelClass cls, const FitConfig& config) {
            return fit_multi(signal, cls, config);
        },
        py::arg("signal"), py::arg("cls"), py::arg("config") = FitConfig{});

    py::class_<ClassifiedComponent>(m, "ClassifiedComponent")
        .def_readonly("params", &ClassifiedComponent::params)
        .def_readonly("verdict_history", &ClassifiedComponent::verdict_history)
        .def_readonly("final_class", &ClassifiedComponent::final_class);
    py::class_<PipelineReport>(m, "PipelineReport")
        .def_readonly("components", &PipelineReport::components)
        .def_readonly("residual", &PipelineReport::residual)
        .def_readonly("noise_variance_estimate", &PipelineReport::noise_variance_estimate)
        .def_readonly("steps_executed", &PipelineReport::steps_executed)
        .def_readonly("stage1_components", &PipelineReport::stage1_components)
        .def_readonly("stage3_components", &PipelineReport::stage3_components);
    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("fit", &PipelineConfig::fit)
        .def_readwrite("alpha", &PipelineConfig::alpha)
        .def_readwrite("classify", &PipelineConfig::classify)
        .def_readwrite("polish_passes", &PipelineConfig::polish_passes);
    m.def("run_pipeline", &run_pipeline, py::arg("signal"),
          py::arg("config") = PipelineConfig{});
    m.def("estimate_noise_variance", &estimate_noise_variance, py::arg("residual"),
          py::arg("neighborhoods"));

    py::class_<FisherMatrix>(m, "FisherMatrix")
        .def_readonly("dim", &FisherMatrix::dim)
        .def_readonly("values", &FisherMatrix::values)
        .def("at", &FisherMatrix::at, py::arg("i"), py::arg("j"));
    m.def("fisher_information", &fisher_information, py::arg("components"), py::arg("grid"),
          py::arg("sigma2"));
    m.def("active_mask", &active_mask, py::arg("components"));
    m.def("crlb_diag", &crlb_diag, py::arg("fisher"), py::arg("active"));

    py::register_exception<DegenerateEnvelope>(m, "DegenerateEnvelope", PyExc_RuntimeError);
    py::register_exception<NoCandidate>(m, "NoCandidate", PyExc_RuntimeError);
    py::register_exception<EmptyComplement>(m, "EmptyComplement", PyExc_RuntimeError);
    py::register_exception<BracketFailure>(m, "BracketFailure", PyExc_RuntimeError);
    py::register_exception<SingularFisher>(m, "SingularFisher", PyExc_RuntimeError);
}
