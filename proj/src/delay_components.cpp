#include "macsim/delay_components.hpp"

#include <sstream>

namespace macsim {

namespace {

void check_nonnegative(const char* what, double v)
{
    if (!(v >= 0.0)) {
        std::ostringstream os;
        os << what << " must be >= 0 (got " << v << ")";
        throw domain_error(os.str());
    }
}

}  // namespace

double bit_time(std::int64_t bits, double f_c)
{
    if (bits < 0) throw domain_error("bit count must be >= 0");
    if (!(f_c > 0.0)) throw domain_error("data rate f_c must be > 0");
    return static_cast<double>(bits) / f_c;
}

double backoff_time(std::int64_t bo_slots, double T_boslot)
{
    if (bo_slots < 0) throw domain_error("bo_slots must be >= 0");
    check_nonnegative("T_boslot", T_boslot);
    return static_cast<double>(bo_slots) * T_boslot;
}

double turnaround_time(double T_data, double T_ack)
{
    check_nonnegative("T_data", T_data);
    check_nonnegative("T_ack", T_ack);
    return T_data + T_ack;
}

double ifs_time(double T_data, double T_ack)
{
    check_nonnegative("T_data", T_data);
    check_nonnegative("T_ack", T_ack);
    if (T_data < T_ack) {
        std::ostringstream os;
        os << "inter-frame space would be negative (T_data " << T_data << " < T_ack " << T_ack
           << ")";
        throw domain_error(os.str());
    }
    return T_data - T_ack;
}

double frame_delay(AccessTechnique tech, const BitBudget& bits, const TimingBudget& timing,
                   const FrameDelayOptions& options)
{
    check_nonnegative("T_g", timing.T_g);
    check_nonnegative("T_que", timing.T_que);
    check_nonnegative("T_idle", timing.T_idle);
    check_nonnegative("T_bon", timing.T_bon);
    check_nonnegative("T_rts", timing.T_rts);
    check_nonnegative("T_cts", timing.T_cts);

    const double T_oh = bit_time(bits.N_oh, bits.f_c);
    const double T_ack = bit_time(bits.N_ack, bits.f_c);
    const double T_sync = bit_time(bits.N_syn, bits.f_c);
    const double T_data = bit_time(bits.N_data, bits.f_c);
    const double T_ta = turnaround_time(T_data, T_ack);

    switch (tech) {
        case AccessTechnique::PureAloha:
            return T_data + timing.T_que;
        case AccessTechnique::Tdma: {
            double d = T_oh + T_ack + timing.T_g + T_sync + T_ta;
            if (options.tdma_include_data) d += T_data;
            return d;
        }
        case AccessTechnique::SlottedAloha:
            return T_ack + T_sync + T_ta + timing.T_idle + timing.T_bon;
        case AccessTechnique::Fdma:
            return T_oh + T_ack + timing.T_g + T_ta + T_data;
        case AccessTechnique::CsmaCa: {
            const double T_bo = backoff_time(timing.bo_slots, timing.T_boslot);
            const double T_ifs = ifs_time(T_data, T_ack);
            return T_bo + T_data + T_ta + T_ack + T_ifs + timing.T_rts + timing.T_cts;
        }
    }
    throw domain_error("unknown technique");
}

double throughput_from_delay(std::int64_t x, double D)
{
    if (x < 0) throw domain_error("bit count x must be >= 0");
    if (!(D > 0.0)) throw domain_error("delay D must be > 0");
    return 8.0 * static_cast<double>(x) / D;
}

}  // namespace macsim
