#include "macsim/types.hpp"

#include <cmath>
#include <sstream>

namespace macsim {

std::string to_string(AccessTechnique tech)
{
    switch (tech) {
        case AccessTechnique::PureAloha: return "pure_aloha";
        case AccessTechnique::SlottedAloha: return "slotted_aloha";
        case AccessTechnique::CsmaCa: return "csma_ca";
        case AccessTechnique::Tdma: return "tdma";
        case AccessTechnique::Fdma: return "fdma";
    }
    return "unknown";
}

std::optional<AccessTechnique> technique_from_string(const std::string& name)
{
    for (AccessTechnique t : kAllTechniques)
        if (to_string(t) == name)
            return t;
    return std::nullopt;
}

namespace {

[[noreturn]] void bound_violation(const char* bound, double got)
{
    std::ostringstream os;
    os << bound << " violated (got " << got << ")";
    throw validation_error(os.str());
}

[[noreturn]] void missing_param(const char* field, const char* op)
{
    std::ostringstream os;
    os << field << " is not applicable/unset but required by " << op;
    throw validation_error(os.str());
}

}  // namespace

double TechniqueParams::require_P(const char* op) const
{
    if (!P) missing_param("P", op);
    return *P;
}

double TechniqueParams::require_lambda(const char* op) const
{
    if (!lambda) missing_param("lambda", op);
    return *lambda;
}

double TechniqueParams::require_K(const char* op) const
{
    if (!K) missing_param("K", op);
    return *K;
}

TechniqueParams validate_params(const TechniqueParams& raw)
{
    if (raw.N < 1) bound_violation("N >= 1", static_cast<double>(raw.N));
    if (raw.L < 1) bound_violation("L >= 1", static_cast<double>(raw.L));
    if (!(raw.C > 0.0)) bound_violation("C > 0", raw.C);
    if (!(raw.tau > 0.0)) bound_violation("tau > 0", raw.tau);
    if (raw.P) {
        if (!(*raw.P >= 0.0)) bound_violation("P >= 0", *raw.P);
        if (!(*raw.P <= 1.0)) bound_violation("P <= 1", *raw.P);
    }
    if (raw.lambda && !(*raw.lambda >= 0.0)) bound_violation("lambda >= 0", *raw.lambda);
    if (raw.K && !(*raw.K >= 1.0)) bound_violation("K >= 1", *raw.K);
    if (!(raw.a >= 0.0)) bound_violation("a >= 0", raw.a);
    return raw;
}

TechniqueParams default_params()
{
    TechniqueParams p;
    p.P = 2e-4;
    p.lambda = 2.0;
    p.K = 2.0;
    return p;
}

std::vector<double> make_sweep(const SweepSpec& spec)
{
    if (!(spec.start >= 0.0)) bound_violation("sweep start >= 0", spec.start);
    if (!(spec.stop > spec.start)) bound_violation("sweep stop > start", spec.stop);
    if (spec.points < 2) bound_violation("sweep points >= 2", spec.points);
    if (spec.scale == SweepScale::Logarithmic && !(spec.start > 0.0))
        bound_violation("logarithmic sweep start > 0", spec.start);

    std::vector<double> values(static_cast<std::size_t>(spec.points));
    const int n = spec.points;
    if (spec.scale == SweepScale::Linear) {
        const double step = (spec.stop - spec.start) / (n - 1);
        for (int i = 0; i < n; ++i)
            values[static_cast<std::size_t>(i)] = spec.start + step * i;
    } else {
        const double lo = std::log(spec.start);
        const double step = (std::log(spec.stop) - lo) / (n - 1);
        for (int i = 0; i < n; ++i)
            values[static_cast<std::size_t>(i)] = std::exp(lo + step * i);
    }
    // endpoints exact regardless of rounding
    values.front() = spec.start;
    values.back() = spec.stop;

    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            bound_violation("sweep spacing collapsed (points too dense)", values[i]);
    return values;
}

}  // namespace macsim
