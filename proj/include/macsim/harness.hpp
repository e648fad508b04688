#pragma once

#include <string>
#include <vector>

#include "macsim/analytic.hpp"
#include "macsim/config.hpp"
#include "macsim/csv.hpp"

namespace macsim {

/// Analytic sweep over a set of techniques. Produces the curve CSV
/// (`technique,scenario,G,T,D,saturated`) with rows in technique enum order,
/// then sweep order, plus the self-describing JSON manifest.
struct AnalyticOutput {
    std::string csv;
    std::string manifest;
};
AnalyticOutput run_analytic(ScenarioKind scenario, std::vector<AccessTechnique> techniques,
                            const HarnessConfig& config, const std::string& output_name);

/// Simulation sweep: one stats row per (technique, load, seed), a plain-text
/// summary with measured-vs-closed-form deviations where an oracle exists,
/// and the manifest. Runs execute concurrently; output order is fixed.
struct SimulateOutput {
    std::string csv;
    std::string summary;
    std::string manifest;
};
SimulateOutput run_simulate(std::vector<AccessTechnique> techniques, const HarnessConfig& config,
                            const std::string& output_name);

/// Re-executes the run described by a manifest and returns the regenerated
/// CSV (byte-identical to the original, timestamp aside).
std::string run_from_manifest(const std::string& manifest_text);

/// Deviation thresholds and ordering tables for an analytic/simulated CSV
/// pair sharing one load grid. `passed` reflects the oracle-deviation checks.
struct CompareOutput {
    std::string report;
    bool passed = false;
};
CompareOutput run_compare(const CsvTable& analytic, const CsvTable& sim,
                          const std::string& sim_manifest_text);

/// Relative deviation tolerance for a measured throughput against an oracle
/// value: max(5% of the oracle, 3 binomial standard errors over `frames`
/// trials), expressed as an absolute bound.
double agreement_tolerance(double oracle_T, double frames);

}  // namespace macsim
