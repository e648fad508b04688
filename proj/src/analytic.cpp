#include "macsim/analytic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace macsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_load(double G)
{
    if (!(G >= 0.0)) throw domain_error("offered load must be >= 0");
}

void check_stability(double q, const char* what)
{
    if (!(q < 1.0)) {
        std::ostringstream os;
        os << what << " saturated: argument " << q << " is outside [0, 1)";
        throw saturation_error(os.str());
    }
}

// (K-1)/2 + 2a + 1, the retransmission weight shared by the ALOHA-family
// delay expressions.
double retransmission_weight(const TechniqueParams& p, const char* op)
{
    return (p.require_K(op) - 1.0) / 2.0 + 2.0 * p.a + 1.0;
}

// 1-persistent CSMA throughput. The printed source drops parentheses; this
// is the minimal balanced reading:
//   T(G) = G(1+G+aG(1+G+aG/2)) e^{-G(1+2a)}
//        / [ G(1+2a) - (1-e^{-aG}) + (1+aG) e^{-G(1+a)} ]
double csma_throughput(double G, double a)
{
    if (G == 0.0) return 0.0;
    const double num =
        G * (1.0 + G + a * G * (1.0 + G + a * G / 2.0)) * std::exp(-G * (1.0 + 2.0 * a));
    const double den = G * (1.0 + 2.0 * a) - (1.0 - std::exp(-a * G)) +
                       (1.0 + a * G) * std::exp(-G * (1.0 + a));
    return num / den;
}

// q/(2(1-q)) * N*L/C, the shared queueing term of the TDMA/FDMA expressions.
double queue_term(double q, const TechniqueParams& p)
{
    return q / (2.0 * (1.0 - q)) * static_cast<double>(p.N) * p.frame_time();
}

}  // namespace

std::string to_string(ScenarioKind scenario)
{
    switch (scenario) {
        case ScenarioKind::DelayVsThroughput: return "delay_vs_throughput";
        case ScenarioKind::DelayVsLoad: return "delay_vs_load";
        case ScenarioKind::ThroughputVsLoad: return "throughput_vs_load";
    }
    return "unknown";
}

std::optional<ScenarioKind> scenario_from_string(const std::string& name)
{
    for (ScenarioKind s : {ScenarioKind::DelayVsThroughput, ScenarioKind::DelayVsLoad,
                           ScenarioKind::ThroughputVsLoad})
        if (to_string(s) == name)
            return s;
    return std::nullopt;
}

double throughput_vs_load(AccessTechnique tech, double G, const TechniqueParams& params)
{
    check_load(G);
    switch (tech) {
        case AccessTechnique::PureAloha:
            return G * std::exp(-2.0 * G);
        case AccessTechnique::SlottedAloha:
            return G * std::exp(-G);
        case AccessTechnique::CsmaCa:
            return csma_throughput(G, params.a);
        case AccessTechnique::Tdma:
            check_stability(G, "TDMA");
            return params.frame_time() + queue_term(G, params) +
                   static_cast<double>(params.N) * params.frame_time() / 2.0;
        case AccessTechnique::Fdma:
            check_stability(G, "FDMA");
            return static_cast<double>(params.N) * params.frame_time() + queue_term(G, params);
    }
    throw domain_error("unknown technique");
}

double delay_vs_throughput(AccessTechnique tech, double S, const TechniqueParams& params)
{
    if (!(S >= 0.0)) throw domain_error("throughput must be >= 0");
    switch (tech) {
        case AccessTechnique::PureAloha:
        case AccessTechnique::CsmaCa:
            // CSMA/CA's printed delay relation reduces to the pure-ALOHA
            // pattern once parentheses are balanced.
            return (std::exp(2.0 * S) - 1.0) *
                       retransmission_weight(params, "delay_vs_throughput") +
                   1.0 + params.a;
        case AccessTechnique::SlottedAloha:
            return (std::exp(S) - 1.0) * retransmission_weight(params, "delay_vs_throughput") +
                   1.5 + params.a;
        case AccessTechnique::Tdma:
            check_stability(S, "TDMA");
            return params.frame_time() + queue_term(S, params) +
                   static_cast<double>(params.N) * params.frame_time() / 2.0;
        case AccessTechnique::Fdma:
            check_stability(S, "FDMA");
            return static_cast<double>(params.N) * params.frame_time() + queue_term(S, params);
    }
    throw domain_error("unknown technique");
}

double delay_vs_load(AccessTechnique tech, double G, const TechniqueParams& params)
{
    check_load(G);
    switch (tech) {
        case AccessTechnique::PureAloha:
            return (std::exp(G) - 1.0) * retransmission_weight(params, "delay_vs_load") + 1.0 +
                   params.a;
        case AccessTechnique::SlottedAloha:
            return (std::exp(G) - 1.0) * retransmission_weight(params, "delay_vs_load") + 1.5 +
                   params.a;
        case AccessTechnique::CsmaCa:
            // The printed load->delay relation duplicates the throughput
            // curve; the consistent choice is to compose the two.
            return delay_vs_throughput(tech, throughput_vs_load(tech, G, params), params);
        case AccessTechnique::Tdma:
        case AccessTechnique::Fdma:
            // Same expressions as delay_vs_throughput with q read as G
            // (and the stray 1/a denominators read as 1/C).
            return delay_vs_throughput(tech, G, params);
    }
    throw domain_error("unknown technique");
}

std::vector<CurvePoint> generate_curve(AccessTechnique tech, ScenarioKind scenario,
                                       const SweepSpec& sweep, const TechniqueParams& params)
{
    validate_params(params);
    const std::vector<double> values = make_sweep(sweep);
    std::vector<CurvePoint> curve;
    curve.reserve(values.size());
    for (double x : values) {
        CurvePoint pt;
        pt.G = kNaN;
        pt.T = kNaN;
        pt.D = kNaN;
        try {
            switch (scenario) {
                case ScenarioKind::ThroughputVsLoad:
                    pt.G = x;
                    pt.T = throughput_vs_load(tech, x, params);
                    break;
                case ScenarioKind::DelayVsLoad:
                    pt.G = x;
                    pt.D = delay_vs_load(tech, x, params);
                    break;
                case ScenarioKind::DelayVsThroughput:
                    pt.T = x;
                    pt.D = delay_vs_throughput(tech, x, params);
                    break;
            }
        } catch (const saturation_error&) {
            pt.saturated = true;
            if (scenario == ScenarioKind::DelayVsThroughput) {
                pt.T = x;
                pt.D = kNaN;
            } else {
                pt.G = x;
                pt.T = kNaN;
                pt.D = kNaN;
            }
        }
        curve.push_back(pt);
    }
    return curve;
}

PeakThroughput peak_throughput(AccessTechnique tech, const TechniqueParams& params)
{
    if (tech == AccessTechnique::Tdma || tech == AccessTechnique::Fdma)
        throw domain_error("peak_throughput: TDMA/FDMA quantities are not bounded throughputs");
    validate_params(params);

    // Coarse bracket first, then golden-section to 1e-9 in G.
    const double lo_limit = 1e-9, hi_limit = 10.0;
    const int grid = 4096;
    double best_g = lo_limit, best_t = -1.0;
    for (int i = 0; i <= grid; ++i) {
        const double g = lo_limit + (hi_limit - lo_limit) * i / grid;
        const double t = throughput_vs_load(tech, g, params);
        if (t > best_t) {
            best_t = t;
            best_g = g;
        }
    }
    double lo = std::max(lo_limit, best_g - (hi_limit - lo_limit) / grid);
    double hi = std::min(hi_limit, best_g + (hi_limit - lo_limit) / grid);

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = throughput_vs_load(tech, x1, params);
    double f2 = throughput_vs_load(tech, x2, params);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = throughput_vs_load(tech, x2, params);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = throughput_vs_load(tech, x1, params);
        }
    }
    PeakThroughput peak;
    peak.G = (lo + hi) / 2.0;
    peak.T = throughput_vs_load(tech, peak.G, params);
    return peak;
}

}  // namespace macsim
