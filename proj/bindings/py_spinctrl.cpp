#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinctrl/ga.hpp"
#include "spinctrl/phase_space.hpp"
#include "spinctrl/squeezing.hpp"
#include "spinctrl/stats.hpp"

namespace py = pybind11;
using namespace spinctrl;

PYBIND11_MODULE(_spinctrl, mod) {
    mod.doc() = "Collective-spin squeezing simulator and pulse-sequence optimizer";

    py::class_<SpinOperators>(mod, "SpinOperators")
        .def_readonly("n_spins", &SpinOperators::n_spins)
        .def_readonly("j", &SpinOperators::j)
        .def_readonly("dim", &SpinOperators::dim)
        .def_readonly("jx", &SpinOperators::jx)
        .def_readonly("jy", &SpinOperators::jy)
        .def_readonly("jz", &SpinOperators::jz)
        .def_readonly("jplus", &SpinOperators::jplus)
        .def_readonly("jminus", &SpinOperators::jminus)
        .def("m_of", &SpinOperators::m_of, py::arg("i"));

    mod.def("build_spin_operators", &build_spin_operators, py::arg("n_spins"));
    mod.def("coherent_spin_state", &coherent_spin_state, py::arg("ops"),
            py::arg("theta"), py::arg("phi"));
    mod.def("expectation", &expectation, py::arg("op"), py::arg("rho"));
    mod.def("variance", &variance, py::arg("op"), py::arg("rho"));

    mod.def("xi_z_squared", &xi_z_squared, py::arg("rho"), py::arg("ops"));
    mod.def("xi_perp_squared", &xi_perp_squared, py::arg("rho"), py::arg("ops"));
    mod.def("optimal_phi", &optimal_phi, py::arg("a"), py::arg("b"));

    py::class_<MeanSpinFrame>(mod, "MeanSpinFrame")
        .def_readonly("theta", &MeanSpinFrame::theta)
        .def_readonly("phi", &MeanSpinFrame::phi)
        .def_readonly("magnitude", &MeanSpinFrame::magnitude)
        .def_readonly("n1", &MeanSpinFrame::n1)
        .def_readonly("n2", &MeanSpinFrame::n2);
    mod.def("mean_spin_frame", &mean_spin_frame, py::arg("rho"), py::arg("ops"));

    py::class_<NoiseParams>(mod, "NoiseParams")
        .def(py::init<>())
        .def(py::init([](double gamma, double gamma_z, double n_th) {
                 return NoiseParams{gamma, gamma_z, n_th};
             }),
             py::arg("gamma") = 0.0, py::arg("gamma_z") = 0.0, py::arg("n_th") = 0.0)
        .def_readwrite("gamma", &NoiseParams::gamma)
        .def_readwrite("gamma_z", &NoiseParams::gamma_z)
        .def_readwrite("n_th", &NoiseParams::n_th);

    py::class_<PulseSchedule>(mod, "PulseSchedule")
        .def(py::init<>())
        .def_readwrite("t_total", &PulseSchedule::t_total)
        .def_readwrite("levels", &PulseSchedule::levels)
        .def_readwrite("sequence", &PulseSchedule::sequence)
        .def("segments", &PulseSchedule::segments)
        .def("segment_dt", &PulseSchedule::segment_dt);

    py::class_<Trajectory>(mod, "Trajectory")
        .def_readonly("states", &Trajectory::states)
        .def_readonly("xi_z", &Trajectory::xi_z)
        .def_readonly("times", &Trajectory::times);

    mod.def("evolve_segment", &evolve_segment, py::arg("rho"), py::arg("ops"),
            py::arg("omega"), py::arg("kappa"), py::arg("noise"), py::arg("dt"),
            py::arg("substeps"));
    mod.def("oracle_evolve_exact", &oracle_evolve_exact, py::arg("rho"), py::arg("ops"),
            py::arg("omega"), py::arg("kappa"), py::arg("noise"), py::arg("dt"));
    mod.def("evolve_sequence", &evolve_sequence, py::arg("rho0"), py::arg("schedule"),
            py::arg("ops"), py::arg("kappa"), py::arg("noise"),
            py::arg("substeps_per_segment"));

    py::class_<GAConfig>(mod, "GAConfig")
        .def(py::init<>())
        .def_readwrite("population_size", &GAConfig::population_size)
        .def_readwrite("generations", &GAConfig::generations)
        .def_readwrite("c_s", &GAConfig::c_s)
        .def_readwrite("f_h", &GAConfig::f_h)
        .def_readwrite("m_s", &GAConfig::m_s)
        .def_readwrite("p_final", &GAConfig::p_final)
        .def_readwrite("p_process", &GAConfig::p_process)
        .def_readwrite("elite_count", &GAConfig::elite_count)
        .def_readwrite("levels", &GAConfig::levels)
        .def_readwrite("pulse_count", &GAConfig::pulse_count)
        .def_readwrite("t_total", &GAConfig::t_total)
        .def_readwrite("n_spins", &GAConfig::n_spins)
        .def_readwrite("kappa", &GAConfig::kappa)
        .def_readwrite("noise", &GAConfig::noise)
        .def_readwrite("seed", &GAConfig::seed)
        .def_readwrite("substeps", &GAConfig::substeps)
        .def("validate", &GAConfig::validate);

    py::class_<Individual>(mod, "Individual")
        .def_readonly("genes", &Individual::genes)
        .def_readonly("performance", &Individual::performance)
        .def_readonly("fitness", &Individual::fitness);

    py::class_<GenerationRecord>(mod, "GenerationRecord")
        .def_readonly("index", &GenerationRecord::index)
        .def_readonly("final_xi_z", &GenerationRecord::final_xi_z)
        .def_readonly("best_performance", &GenerationRecord::best_performance)
        .def_readonly("mean_performance", &GenerationRecord::mean_performance)
        .def_readonly("median_performance", &GenerationRecord::median_performance)
        .def_readonly("best_final_xi_z", &GenerationRecord::best_final_xi_z)
        .def_readonly("mean_final_xi_z", &GenerationRecord::mean_final_xi_z)
        .def_readonly("median_final_xi_z", &GenerationRecord::median_final_xi_z)
        .def_readonly("best_genes", &GenerationRecord::best_genes)
        .def_readonly("best_trace_times", &GenerationRecord::best_trace_times)
        .def_readonly("best_trace_xi_z", &GenerationRecord::best_trace_xi_z);

    py::class_<GAResult>(mod, "GAResult")
        .def_readonly("records", &GAResult::records)
        .def_readonly("best", &GAResult::best)
        .def_readonly("best_trajectory", &GAResult::best_trajectory)
        .def_readonly("floored_xi_samples", &GAResult::floored_xi_samples);

    mod.def(
        "run_ga",
        [](const GAConfig& config, int workers) {
            return run_ga(config, make_lindblad_evaluator(config), workers);
        },
        py::arg("config"), py::arg("workers") = 1,
        "Optimize a pulse sequence with the built-in Lindblad evaluator");

    py::class_<SphereGrid>(mod, "SphereGrid")
        .def(py::init<>())
        .def(py::init([](int n_theta, int n_phi) {
                 return SphereGrid{n_theta, n_phi};
             }),
             py::arg("n_theta"), py::arg("n_phi"))
        .def_readwrite("n_theta", &SphereGrid::n_theta)
        .def_readwrite("n_phi", &SphereGrid::n_phi)
        .def("theta", &SphereGrid::theta, py::arg("i"))
        .def("phi", &SphereGrid::phi, py::arg("k"));

    py::class_<PhaseField>(mod, "PhaseField")
        .def_readonly("grid", &PhaseField::grid)
        .def_readonly("values", &PhaseField::values);

    mod.def("husimi_q", &husimi_q, py::arg("rho"), py::arg("ops"), py::arg("grid"));
    mod.def("wigner_function", &wigner_function, py::arg("rho"), py::arg("ops"),
            py::arg("grid"));
    mod.def("wigner_3j", &wigner_3j, py::arg("j1"), py::arg("j2"), py::arg("j3"),
            py::arg("m1"), py::arg("m2"), py::arg("m3"));

    py::class_<KdeEstimate>(mod, "KdeEstimate")
        .def_readonly("grid", &KdeEstimate::grid)
        .def_readonly("density", &KdeEstimate::density)
        .def_readonly("bandwidth", &KdeEstimate::bandwidth);

    py::class_<SummaryStats>(mod, "SummaryStats")
        .def_readonly("mean", &SummaryStats::mean)
        .def_readonly("median", &SummaryStats::median)
        .def_readonly("q25", &SummaryStats::q25)
        .def_readonly("q75", &SummaryStats::q75)
        .def_readonly("min", &SummaryStats::min)
        .def_readonly("max", &SummaryStats::max);

    mod.def("silverman_bandwidth", &silverman_bandwidth, py::arg("samples"));
    mod.def("kde", &kde, py::arg("samples"), py::arg("bandwidth"), py::arg("grid"));
    mod.def("kde_default_grid", &kde_default_grid, py::arg("samples"),
            py::arg("bandwidth"), py::arg("points") = 512);
    mod.def("generation_stats", &generation_stats, py::arg("values"));
}
