#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kerrtap/info.hpp"
#include "kerrtap/protocol.hpp"
#include "kerrtap/report.hpp"
#include "kerrtap/state.hpp"
#include "kerrtap/tap.hpp"
#include "kerrtap/verification.hpp"

namespace py = pybind11;
using namespace kerrtap;

PYBIND11_MODULE(_core, m) {
  m.doc() = "BB84 translucent eavesdropping: Kerr-cell Mach-Zehnder probe "
            "circuit, closed-form attack statistics, channel information "
            "metrics and a seeded protocol simulator.";

  py::enum_<Pol>(m, "Pol").value("H", Pol::H).value("V", Pol::V);
  py::enum_<ProbeMode>(m, "ProbeMode")
      .value("IN", ProbeMode::In)
      .value("ARM1", ProbeMode::Arm1)
      .value("ARM2", ProbeMode::Arm2)
      .value("D3", ProbeMode::D3)
      .value("D4", ProbeMode::D4);
  py::enum_<Stage>(m, "Stage")
      .value("BARE", Stage::Bare)
      .value("INPUT", Stage::Input)
      .value("ARMS", Stage::Arms)
      .value("DETECTORS", Stage::Detectors);
  py::enum_<Detector>(m, "Detector")
      .value("D3", Detector::D3)
      .value("D4", Detector::D4);
  py::enum_<SentSymbol>(m, "SentSymbol")
      .value("U", SentSymbol::U)
      .value("V", SentSymbol::V);
  py::enum_<Basis>(m, "Basis")
      .value("RECTILINEAR", Basis::Rectilinear)
      .value("DIAGONAL", Basis::Diagonal);

  py::class_<BasisLabel>(m, "BasisLabel")
      .def_readonly("polarization", &BasisLabel::polarization)
      .def_readonly("probe_mode", &BasisLabel::probe_mode);

  py::class_<PureState>(m, "PureState")
      .def_property_readonly("stage", &PureState::stage)
      .def_property_readonly("has_probe", &PureState::has_probe)
      .def("amplitude",
           py::overload_cast<Pol>(&PureState::amplitude, py::const_))
      .def("amplitude",
           py::overload_cast<Pol, ProbeMode>(&PureState::amplitude, py::const_))
      .def("norm_sq", &PureState::norm_sq)
      .def("inner_product", &PureState::inner_product)
      .def("labeled_amplitudes", &PureState::labeled_amplitudes);

  py::class_<JointProbabilities>(m, "JointProbabilities")
      .def_readonly("u_d3", &JointProbabilities::u_d3)
      .def_readonly("u_d4", &JointProbabilities::u_d4)
      .def_readonly("v_d3", &JointProbabilities::v_d3)
      .def_readonly("v_d4", &JointProbabilities::v_d4)
      .def("sum", &JointProbabilities::sum);

  m.def("make_qubit", &make_qubit, py::arg("theta"),
        "cos(theta)|H> + sin(theta)|V>, probe-free");
  m.def("attach_probe", &attach_probe, py::arg("qubit"));
  m.def("apply_bs1", &apply_bs1, py::arg("state"));
  m.def("apply_kerr", &apply_kerr, py::arg("state"), py::arg("phi"));
  m.def("apply_bs2", &apply_bs2, py::arg("state"));
  m.def("joint_distribution", &joint_distribution, py::arg("state"),
        py::arg("bob_basis"));

  py::class_<ProbabilityTable>(m, "ProbabilityTable")
      .def_readonly("theta", &ProbabilityTable::theta)
      .def_readonly("phi", &ProbabilityTable::phi)
      .def_readonly("p3_uu", &ProbabilityTable::p3_uu)
      .def_readonly("p4_uu", &ProbabilityTable::p4_uu)
      .def_readonly("p3_uv", &ProbabilityTable::p3_uv)
      .def_readonly("p4_uv", &ProbabilityTable::p4_uv)
      .def_readonly("p3_vu", &ProbabilityTable::p3_vu)
      .def_readonly("p4_vu", &ProbabilityTable::p4_vu)
      .def_readonly("p3_vv", &ProbabilityTable::p3_vv)
      .def_readonly("p4_vv", &ProbabilityTable::p4_vv);

  py::class_<AttackErrorRates>(m, "AttackErrorRates")
      .def_readonly("q_ae", &AttackErrorRates::q_ae)
      .def_readonly("q_eb", &AttackErrorRates::q_eb)
      .def_readonly("q_ab_per_intercept", &AttackErrorRates::q_ab_per_intercept)
      .def_readonly("alpha", &AttackErrorRates::alpha)
      .def_readonly("q_ab", &AttackErrorRates::q_ab);

  m.def("closed_form_table", &closed_form_table, py::arg("theta"),
        py::arg("phi"));
  m.def("circuit_table", &circuit_table, py::arg("theta"), py::arg("phi"),
        "same table via the state-vector circuit; the oracle for "
        "closed_form_table");
  m.def("eve_decode", &eve_decode, py::arg("detector"));
  m.def("attack_error_rates", &attack_error_rates, py::arg("table"),
        py::arg("alpha"));

  py::class_<ChannelMetrics>(m, "ChannelMetrics")
      .def_readonly("i_ae", &ChannelMetrics::i_ae)
      .def_readonly("i_ab", &ChannelMetrics::i_ab)
      .def_readonly("i_eb", &ChannelMetrics::i_eb)
      .def_readonly("q_ab", &ChannelMetrics::q_ab)
      .def_readonly("alpha", &ChannelMetrics::alpha)
      .def_readonly("unsafe", &ChannelMetrics::unsafe);

  m.def("binary_entropy", &binary_entropy, py::arg("q"));
  m.def("capacity", &capacity, py::arg("p_success"));
  m.def("channel_metrics", &channel_metrics, py::arg("theta"), py::arg("phi"),
        py::arg("alpha"));
  m.def("threshold_alpha", &threshold_alpha, py::arg("theta"), py::arg("phi"),
        "smallest unsafe intercept fraction, or None");

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("n_pulses", &SimConfig::n_pulses)
      .def_readwrite("alpha", &SimConfig::alpha)
      .def_readwrite("phi", &SimConfig::phi)
      .def_readwrite("eve_frame_angle", &SimConfig::eve_frame_angle)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("channel_flip_rate", &SimConfig::channel_flip_rate)
      .def_readwrite("sample_fraction", &SimConfig::sample_fraction)
      .def_readwrite("n_chunks", &SimConfig::n_chunks);

  py::class_<PulseRecord>(m, "PulseRecord")
      .def_readonly("alice_basis", &PulseRecord::alice_basis)
      .def_readonly("alice_bit", &PulseRecord::alice_bit)
      .def_readonly("intercepted", &PulseRecord::intercepted)
      .def_readonly("eve_detector", &PulseRecord::eve_detector)
      .def_readonly("eve_guess", &PulseRecord::eve_guess)
      .def_readonly("bob_basis", &PulseRecord::bob_basis)
      .def_readonly("bob_bit", &PulseRecord::bob_bit)
      .def_readonly("sifted", &PulseRecord::sifted);

  py::class_<RunStats>(m, "RunStats")
      .def_readonly("n_sifted", &RunStats::n_sifted)
      .def_readonly("qber_estimate", &RunStats::qber_estimate)
      .def_readonly("qber_true", &RunStats::qber_true)
      .def_readonly("eve_accuracy_on_sifted", &RunStats::eve_accuracy_on_sifted)
      .def_readonly("qber_rectilinear", &RunStats::qber_rectilinear)
      .def_readonly("qber_diagonal", &RunStats::qber_diagonal)
      .def_readonly("seed", &RunStats::seed)
      .def("to_json", [](const RunStats& s) { return to_json(s); });

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("stats", &RunResult::stats)
      .def_readonly("records", &RunResult::records);

  py::class_<QberEstimate>(m, "QberEstimate")
      .def_readonly("estimate", &QberEstimate::estimate)
      .def_readonly("alice_key", &QberEstimate::alice_key)
      .def_readonly("bob_key", &QberEstimate::bob_key);

  m.def("run_bb84", &run_bb84, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("sift", &sift, py::arg("records"));
  m.def(
      "estimate_qber",
      [](const std::vector<PulseRecord>& sifted, double sample_fraction,
         std::uint64_t seed) {
        return estimate_qber(sifted, sample_fraction, seed);
      },
      py::arg("sifted"), py::arg("sample_fraction"), py::arg("seed"));
  m.def(
      "records_csv",
      [](const std::vector<PulseRecord>& records) {
        std::ostringstream os;
        write_records(os, records);
        return os.str();
      },
      py::arg("records"), "record dump as one CSV string, header included");

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("pass_", &CheckResult::pass)
      .def_readonly("detail", &CheckResult::detail);
  m.def("run_verification", &run_verification, py::arg("grid_n") = 101);

  py::class_<OutputRow>(m, "OutputRow")
      .def_readonly("theta", &OutputRow::theta)
      .def_readonly("phi", &OutputRow::phi)
      .def_readonly("alpha", &OutputRow::alpha)
      .def_readonly("table", &OutputRow::table)
      .def_readonly("rates", &OutputRow::rates)
      .def_readonly("metrics", &OutputRow::metrics)
      .def("to_json", [](const OutputRow& r) { return to_json(r); })
      .def("to_csv", [](const OutputRow& r) { return to_csv(r); });
  m.def("evaluate_point", &evaluate_point, py::arg("theta"), py::arg("phi"),
        py::arg("alpha"));
  m.def("csv_header", &csv_header);

  m.attr("__version__") = "0.1.0";
}
