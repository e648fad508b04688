#pragma once

#include <cstdint>

#include "macsim/types.hpp"

namespace macsim {

/// Frame composition in bits plus the communication data rate.
struct BitBudget {
    std::int64_t N_oh = 0;    ///< overhead bits
    std::int64_t N_ack = 0;   ///< ACK/NACK bits
    std::int64_t N_syn = 0;   ///< synchronization bits
    std::int64_t N_data = 0;  ///< data bits
    double f_c = 64000.0;     ///< communication data rate, bits/s
};

/// Free time components of the frame-delay sums. T_ta and T_ifs are carried
/// for completeness; frame_delay derives the effective turnaround and
/// inter-frame space from the bit budget (T_ta = T_data + T_ack,
/// T_ifs = T_data - T_ack) rather than reading these fields.
struct TimingBudget {
    double T_g = 0.0;      ///< guard time, s
    double T_ta = 0.0;     ///< turnaround time, s
    double T_que = 0.0;    ///< queuing time, s
    double T_idle = 0.0;   ///< post-transmission idle time, s
    double T_bon = 0.0;    ///< slot-boundary wait, s
    double T_ifs = 0.0;    ///< inter-frame space, s
    double T_rts = 0.0;    ///< RTS time, s
    double T_cts = 0.0;    ///< CTS time, s
    std::int64_t bo_slots = 0;  ///< backoff slot count
    double T_boslot = 0.0;      ///< backoff slot duration, s
};

/// bits / f_c. Throws domain_error for f_c <= 0 or bits < 0.
double bit_time(std::int64_t bits, double f_c);

/// bo_slots * T_boslot.
double backoff_time(std::int64_t bo_slots, double T_boslot);

/// T_data + T_ack. With acknowledgements disabled both inputs are zero and
/// the result is zero.
double turnaround_time(double T_data, double T_ack);

/// T_data - T_ack; a negative result is a domain_error, not clamped.
double ifs_time(double T_data, double T_ack);

struct FrameDelayOptions {
    /// The TDMA sum omits T_data as printed; this switch adds it for
    /// sensitivity studies. Off by default.
    bool tdma_include_data = false;
};

/// Component-wise frame delay for one technique:
///   Pure ALOHA  D = T_data + T_que
///   TDMA        D = T_oh + T_ack + T_g + T_sync + T_ta
///   S-ALOHA     D = T_ack + T_syn + T_ta + T_idle + T_bon
///   FDMA        D = T_oh + T_ack + T_g + T_ta + T_data
///   CSMA/CA     D = T_bo + T_data + T_ta + T_ack + T_ifs + T_rts + T_cts
/// T_oh/T_ack/T_sync/T_data come from the bit budget via bit_time, T_bo via
/// backoff_time, T_ta via turnaround_time and T_ifs via ifs_time; component
/// errors propagate.
double frame_delay(AccessTechnique tech, const BitBudget& bits, const TimingBudget& timing,
                   const FrameDelayOptions& options = {});

/// T = 8x / D. Throws domain_error for D <= 0 or x < 0.
double throughput_from_delay(std::int64_t x, double D);

}  // namespace macsim
