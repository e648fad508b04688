#pragma once

#include <vector>

#include "macsim/types.hpp"

namespace macsim {

/// The three comparison scenarios: each sweeps one axis and evaluates the
/// corresponding closed form for every technique.
enum class ScenarioKind { DelayVsThroughput, DelayVsLoad, ThroughputVsLoad };

std::string to_string(ScenarioKind scenario);
std::optional<ScenarioKind> scenario_from_string(const std::string& name);

/// Throughput as a function of offered load G.
///
/// Pure ALOHA: G*exp(-2G). Slotted ALOHA: G*exp(-G). CSMA/CA: the
/// 1-persistent carrier-sense form (see analytic.cpp for the exact
/// numerator/denominator). TDMA and FDMA: queue-style expressions in the
/// native time-like units
///   TDMA  T = L/C + G/(2(1-G))*N*L/C + N*L/(2C)
///   FDMA  T = N*L/C + G/(2(1-G))*N*L/C
/// which require G < 1; at G >= 1 a saturation_error is thrown.
double throughput_vs_load(AccessTechnique tech, double G, const TechniqueParams& params);

/// Delay as a function of throughput S.
///
/// Pure ALOHA / CSMA/CA: (exp(2S)-1)*((K-1)/2 + 2a + 1) + 1 + a, in frame
/// times. Slotted ALOHA: (exp(S)-1)*((K-1)/2 + 2a + 1) + 1.5 + a. TDMA and
/// FDMA treat S as the queue occupancy q and return seconds:
///   TDMA  D = L/C + S/(2(1-S))*N*L/C + N*L/(2C)
///   FDMA  D = N*L/C + S/(2(1-S))*N*L/C
/// For TDMA/FDMA, S >= 1 throws saturation_error.
double delay_vs_throughput(AccessTechnique tech, double S, const TechniqueParams& params);

/// Delay as a function of offered load G. ALOHA variants follow the same
/// pattern as delay_vs_throughput with exp(G) in place of the throughput
/// exponential; CSMA/CA composes its own throughput curve into its delay
/// curve; TDMA/FDMA identify q with G.
double delay_vs_load(AccessTechnique tech, double G, const TechniqueParams& params);

/// One CurvePoint per sweep value. Sweep values outside a technique's
/// stability region are emitted with the saturated flag set (computed
/// fields NaN) instead of being dropped, so rows stay aligned across
/// techniques.
std::vector<CurvePoint> generate_curve(AccessTechnique tech, ScenarioKind scenario,
                                       const SweepSpec& sweep, const TechniqueParams& params);

struct PeakThroughput {
    double G = 0.0;
    double T = 0.0;
};

/// Numeric maximization of throughput_vs_load over G in (0, 10], to an
/// absolute tolerance of 1e-9 in G. Only the contention techniques have a
/// bounded throughput curve; TDMA/FDMA throw domain_error.
PeakThroughput peak_throughput(AccessTechnique tech, const TechniqueParams& params);

}  // namespace macsim
