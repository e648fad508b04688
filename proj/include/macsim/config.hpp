#pragma once

#include <map>
#include <string>
#include <vector>

#include "macsim/simulator.hpp"
#include "macsim/types.hpp"

namespace macsim {

inline constexpr const char* kToolName = "macsim";
inline constexpr const char* kToolVersion = "0.1.0";

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fully resolved harness configuration: per-technique parameters plus the
/// sweep and simulation settings shared by all runs.
struct HarnessConfig {
    std::map<AccessTechnique, TechniqueParams> params;
    SweepSpec sweep;
    double horizon = 200.0;
    std::vector<std::uint64_t> seeds = {1};
    int backoff_window = 16;
    int retry_limit = 0;
    CsmaConfig csma;
    /// "section.key=value" pairs that differed from the defaults, echoed
    /// into the run manifest.
    std::vector<std::string> overrides;

    /// Simulation config for one (technique, target load, seed) run; the
    /// per-node arrival rate is derived as lambda = G*C/(L*N).
    SimConfig make_sim_config(AccessTechnique tech, double load, std::uint64_t seed) const;
};

/// The built-in defaults (used when no config file is given).
HarnessConfig default_config();

/// Parses a sectioned key=value configuration file. Unspecified fields take
/// the documented defaults; unknown sections or keys are rejected. File
/// units follow the parameter table (C in kbit/s, tau and sifs in ms);
/// everything is converted to base units here.
HarnessConfig load_config(const std::string& path);

/// Per-node arrival rate that presents aggregate offered load G.
double lambda_for_load(double G, const TechniqueParams& params);

}  // namespace macsim
