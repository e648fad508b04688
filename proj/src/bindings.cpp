#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "macsim/analytic.hpp"
#include "macsim/config.hpp"
#include "macsim/delay_components.hpp"
#include "macsim/simulator.hpp"

namespace py = pybind11;
using namespace macsim;

PYBIND11_MODULE(_macsim, m)
{
    m.doc() = "analytic models and discrete-event simulation of five medium-access techniques";
    m.attr("__version__") = kToolVersion;

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<saturation_error>(m, "SaturationError", PyExc_ValueError);
    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);

    py::enum_<AccessTechnique>(m, "AccessTechnique")
        .value("PureAloha", AccessTechnique::PureAloha)
        .value("SlottedAloha", AccessTechnique::SlottedAloha)
        .value("CsmaCa", AccessTechnique::CsmaCa)
        .value("Tdma", AccessTechnique::Tdma)
        .value("Fdma", AccessTechnique::Fdma);

    py::enum_<ScenarioKind>(m, "ScenarioKind")
        .value("DelayVsThroughput", ScenarioKind::DelayVsThroughput)
        .value("DelayVsLoad", ScenarioKind::DelayVsLoad)
        .value("ThroughputVsLoad", ScenarioKind::ThroughputVsLoad);

    py::enum_<SweepScale>(m, "SweepScale")
        .value("Linear", SweepScale::Linear)
        .value("Logarithmic", SweepScale::Logarithmic);

    py::class_<TechniqueParams>(m, "TechniqueParams")
        .def(py::init<>())
        .def_readwrite("N", &TechniqueParams::N)
        .def_readwrite("L", &TechniqueParams::L)
        .def_readwrite("C", &TechniqueParams::C)
        .def_readwrite("tau", &TechniqueParams::tau)
        .def_readwrite("P", &TechniqueParams::P)
        .def_readwrite("lam", &TechniqueParams::lambda)
        .def_readwrite("K", &TechniqueParams::K)
        .def_readwrite("a", &TechniqueParams::a)
        .def("frame_time", &TechniqueParams::frame_time)
        .def("__repr__", [](const TechniqueParams& p) {
            std::ostringstream os;
            os << "TechniqueParams(N=" << p.N << ", L=" << p.L << ", C=" << p.C
               << ", tau=" << p.tau << ", a=" << p.a << ")";
            return os.str();
        });

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def(py::init([](double start, double stop, int points, SweepScale scale) {
                 return SweepSpec{start, stop, points, scale};
             }),
             py::arg("start"), py::arg("stop"), py::arg("points"),
             py::arg("scale") = SweepScale::Logarithmic)
        .def_readwrite("start", &SweepSpec::start)
        .def_readwrite("stop", &SweepSpec::stop)
        .def_readwrite("points", &SweepSpec::points)
        .def_readwrite("scale", &SweepSpec::scale);

    py::class_<CurvePoint>(m, "CurvePoint")
        .def_readonly("G", &CurvePoint::G)
        .def_readonly("T", &CurvePoint::T)
        .def_readonly("D", &CurvePoint::D)
        .def_readonly("saturated", &CurvePoint::saturated);

    m.def("validate_params", &validate_params, py::arg("raw"));
    m.def("default_params", &default_params);
    m.def("make_sweep", &make_sweep, py::arg("spec"));

    m.def("throughput_vs_load", &throughput_vs_load, py::arg("tech"), py::arg("G"),
          py::arg("params"));
    m.def("delay_vs_throughput", &delay_vs_throughput, py::arg("tech"), py::arg("S"),
          py::arg("params"));
    m.def("delay_vs_load", &delay_vs_load, py::arg("tech"), py::arg("G"), py::arg("params"));
    m.def("generate_curve", &generate_curve, py::arg("tech"), py::arg("scenario"),
          py::arg("sweep"), py::arg("params"));

    py::class_<PeakThroughput>(m, "PeakThroughput")
        .def_readonly("G", &PeakThroughput::G)
        .def_readonly("T", &PeakThroughput::T);
    m.def("peak_throughput", &peak_throughput, py::arg("tech"), py::arg("params"));

    py::class_<BitBudget>(m, "BitBudget")
        .def(py::init<>())
        .def_readwrite("N_oh", &BitBudget::N_oh)
        .def_readwrite("N_ack", &BitBudget::N_ack)
        .def_readwrite("N_syn", &BitBudget::N_syn)
        .def_readwrite("N_data", &BitBudget::N_data)
        .def_readwrite("f_c", &BitBudget::f_c);

    py::class_<TimingBudget>(m, "TimingBudget")
        .def(py::init<>())
        .def_readwrite("T_g", &TimingBudget::T_g)
        .def_readwrite("T_ta", &TimingBudget::T_ta)
        .def_readwrite("T_que", &TimingBudget::T_que)
        .def_readwrite("T_idle", &TimingBudget::T_idle)
        .def_readwrite("T_bon", &TimingBudget::T_bon)
        .def_readwrite("T_ifs", &TimingBudget::T_ifs)
        .def_readwrite("T_rts", &TimingBudget::T_rts)
        .def_readwrite("T_cts", &TimingBudget::T_cts)
        .def_readwrite("bo_slots", &TimingBudget::bo_slots)
        .def_readwrite("T_boslot", &TimingBudget::T_boslot);

    py::class_<FrameDelayOptions>(m, "FrameDelayOptions")
        .def(py::init<>())
        .def_readwrite("tdma_include_data", &FrameDelayOptions::tdma_include_data);

    m.def("bit_time", &bit_time, py::arg("bits"), py::arg("f_c"));
    m.def("backoff_time", &backoff_time, py::arg("bo_slots"), py::arg("T_boslot"));
    m.def("turnaround_time", &turnaround_time, py::arg("T_data"), py::arg("T_ack"));
    m.def("ifs_time", &ifs_time, py::arg("T_data"), py::arg("T_ack"));
    m.def("frame_delay", &frame_delay, py::arg("tech"), py::arg("bits"), py::arg("timing"),
          py::arg("options") = FrameDelayOptions{});
    m.def("throughput_from_delay", &throughput_from_delay, py::arg("x"), py::arg("D"));

    py::class_<CsmaConfig>(m, "CsmaConfig")
        .def(py::init<>())
        .def_readwrite("sifs", &CsmaConfig::sifs)
        .def_readwrite("rts_bits", &CsmaConfig::rts_bits)
        .def_readwrite("cts_bits", &CsmaConfig::cts_bits)
        .def_readwrite("ack_bits", &CsmaConfig::ack_bits)
        .def_readwrite("max_retries", &CsmaConfig::max_retries);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("technique", &SimConfig::technique)
        .def_readwrite("params", &SimConfig::params)
        .def_readwrite("horizon", &SimConfig::horizon)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("backoff_window", &SimConfig::backoff_window)
        .def_readwrite("retry_limit", &SimConfig::retry_limit)
        .def_readwrite("csma", &SimConfig::csma);

    py::class_<PacketRecord>(m, "PacketRecord")
        .def_readonly("id", &PacketRecord::id)
        .def_readonly("source", &PacketRecord::source)
        .def_readonly("created_at", &PacketRecord::created_at)
        .def_readonly("attempts", &PacketRecord::attempts)
        .def_readonly("delivered_at", &PacketRecord::delivered_at);

    py::class_<SimStats>(m, "SimStats")
        .def_readonly("generated", &SimStats::generated)
        .def_readonly("delivered", &SimStats::delivered)
        .def_readonly("collided_transmissions", &SimStats::collided_transmissions)
        .def_readonly("dropped", &SimStats::dropped)
        .def_readonly("in_flight", &SimStats::in_flight)
        .def_readonly("measured_G", &SimStats::measured_G)
        .def_readonly("measured_T", &SimStats::measured_T)
        .def_readonly("mean_delay", &SimStats::mean_delay)
        .def_readonly("max_delay", &SimStats::max_delay)
        .def("mean_delay_normalized", &SimStats::mean_delay_normalized, py::arg("params"));

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("stats", &RunResult::stats)
        .def_readonly("packets", &RunResult::packets);

    m.def("generate_arrivals", &generate_arrivals, py::arg("seed"), py::arg("node"),
          py::arg("lam"), py::arg("horizon"));
    m.def("run", &run, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "measure",
        [](const std::vector<PacketRecord>& log, const SimConfig& config) {
            return measure(std::span<const PacketRecord>(log.data(), log.size()), config);
        },
        py::arg("log"), py::arg("config"));

    py::enum_<TxOutcome>(m, "TxOutcome")
        .value("Delivered", TxOutcome::Delivered)
        .value("Collided", TxOutcome::Collided)
        .value("Corrupted", TxOutcome::Corrupted);

    py::class_<Transmission>(m, "Transmission")
        .def(py::init([](double start, double end, std::uint32_t channel) {
                 return Transmission{start, end, channel};
             }),
             py::arg("start"), py::arg("end"), py::arg("channel") = 0)
        .def_readwrite("start", &Transmission::start)
        .def_readwrite("end", &Transmission::end)
        .def_readwrite("channel", &Transmission::channel);

    m.def(
        "resolve_medium",
        [](const std::vector<Transmission>& txs, AccessTechnique tech, double tau,
           std::optional<double> P, std::uint64_t seed) {
            return resolve_medium(std::span<const Transmission>(txs.data(), txs.size()), tech,
                                  tau, P, seed);
        },
        py::arg("transmissions"), py::arg("tech"), py::arg("tau"),
        py::arg("P") = std::nullopt, py::arg("seed") = 0);

    m.def("lambda_for_load", &lambda_for_load, py::arg("G"), py::arg("params"));
}
