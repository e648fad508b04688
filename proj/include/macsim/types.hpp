#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace macsim {

/// The five medium-access techniques under comparison.
enum class AccessTechnique { PureAloha, SlottedAloha, CsmaCa, Tdma, Fdma };

inline constexpr AccessTechnique kAllTechniques[] = {
    AccessTechnique::PureAloha, AccessTechnique::SlottedAloha,
    AccessTechnique::CsmaCa, AccessTechnique::Tdma, AccessTechnique::Fdma};

std::string to_string(AccessTechnique tech);
std::optional<AccessTechnique> technique_from_string(const std::string& name);

struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside an operation's mathematical domain (e.g. negative load).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Load/throughput at or past the queue-stability boundary of TDMA/FDMA.
struct saturation_error : domain_error {
    using domain_error::domain_error;
};

/// Scalar parameter set shared by the analytic models and the simulator.
///
/// P, lambda and K are optional: the parameter table leaves them blank for
/// some techniques, and a blank is "not applicable" rather than zero. Any
/// operation that needs a blank field reports an error instead of
/// substituting a value silently.
///
/// Units are uniform internally: C in bits/s and tau in seconds (the
/// configuration loader converts from kbit/s and milliseconds).
struct TechniqueParams {
    std::int64_t N = 100;    ///< node count
    std::int64_t L = 256;    ///< frame length, bits
    double C = 64000.0;      ///< channel rate, bits/s
    double tau = 0.005;      ///< slot duration, s
    std::optional<double> P;       ///< per-packet failure probability
    std::optional<double> lambda;  ///< packet arrival rate per node, 1/s
    std::optional<double> K;       ///< retransmission/backoff factor
    double a = 0.01;         ///< normalized end-to-end propagation delay

    /// Frame transmission time L/C in seconds.
    double frame_time() const { return static_cast<double>(L) / C; }

    double require_P(const char* op) const;
    double require_lambda(const char* op) const;
    double require_K(const char* op) const;

    bool operator==(const TechniqueParams&) const = default;
};

/// Returns `raw` unchanged if every bound holds; otherwise throws
/// validation_error naming the first violated bound and the offending value.
TechniqueParams validate_params(const TechniqueParams& raw);

/// Fully populated defaults: the parameter-table row values with the
/// documented fill-ins for blank cells (K=2, P=2e-4, lambda=2) and a=0.01.
TechniqueParams default_params();

/// One point of a performance curve. Each generation scenario fills the two
/// fields on its axes; the remaining field is NaN. A point outside a
/// technique's stability region keeps its sweep coordinate, carries NaN in
/// the computed fields and is flagged `saturated` so curve lengths stay
/// aligned across techniques.
struct CurvePoint {
    double G = 0.0;  ///< offered load (dimensionless)
    double T = 0.0;  ///< throughput (normalized, or native units for TDMA/FDMA)
    double D = 0.0;  ///< delay (normalized units or seconds, per technique)
    bool saturated = false;
};

enum class SweepScale { Linear, Logarithmic };

/// Description of a one-dimensional load sweep.
struct SweepSpec {
    double start = 0.01;
    double stop = 1.0;
    int points = 25;
    SweepScale scale = SweepScale::Logarithmic;

    bool operator==(const SweepSpec&) const = default;
};

/// Expands a sweep into exactly `spec.points` strictly increasing values.
/// First value equals `start`, last equals `stop`; logarithmic spacing is
/// geometric and requires start > 0.
std::vector<double> make_sweep(const SweepSpec& spec);

}  // namespace macsim
