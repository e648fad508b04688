#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <memory>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "macsim/types.hpp"

namespace macsim {

/// CSMA/CA handshake constants. The slot-duration parameter tau doubles as
/// the backoff slot unit; sifs defaults to tau/50 when unset.
struct CsmaConfig {
    std::optional<double> sifs;  ///< short inter-frame space, s
    std::int64_t rts_bits = 160;
    std::int64_t cts_bits = 160;
    std::int64_t ack_bits = 88;
    int max_retries = 7;  ///< handshake retries before the packet is dropped
};

/// One simulation run description. Runs are pure functions of this record:
/// identical config (including seed) gives bit-identical results.
struct SimConfig {
    AccessTechnique technique = AccessTechnique::PureAloha;
    TechniqueParams params;
    double horizon = 100.0;  ///< simulated duration, s
    std::uint64_t seed = 1;
    int backoff_window = 16;  ///< max uniform retransmission delay, slots
    /// Extra transmission attempts granted to ALOHA/S-ALOHA/FDMA packets
    /// after a failure. 0 keeps the flow-chart behaviour (send once); the
    /// statistical-agreement checks against the closed forms assume 0.
    int retry_limit = 0;
    CsmaConfig csma;
};

/// Per-packet lifecycle trace.
struct PacketRecord {
    std::uint64_t id = 0;
    std::uint32_t source = 0;
    double created_at = 0.0;
    std::uint32_t attempts = 0;  ///< times the packet reached the medium
    std::optional<double> delivered_at;
};

/// Run counters and derived measurements. measured_G and measured_T are
/// normalized by the frame transmission time L/C; delay fields are absent
/// when nothing was delivered.
struct SimStats {
    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t collided_transmissions = 0;
    std::uint64_t dropped = 0;
    std::uint64_t in_flight = 0;  ///< queued or mid-exchange at horizon
    double measured_G = 0.0;
    double measured_T = 0.0;
    std::optional<double> mean_delay;  ///< s
    std::optional<double> max_delay;   ///< s

    /// mean_delay divided by one frame transmission time.
    std::optional<double> mean_delay_normalized(const TechniqueParams& p) const
    {
        if (!mean_delay) return std::nullopt;
        return *mean_delay / p.frame_time();
    }
};

struct RunResult {
    SimStats stats;
    std::vector<PacketRecord> packets;
};

/// Homogeneous Poisson arrival times for one node over [0, horizon).
/// Deterministic given (seed, node); lambda = 0 yields an empty list.
std::vector<double> generate_arrivals(std::uint64_t seed, std::uint32_t node, double lambda,
                                      double horizon);

/// A transmission interval on a channel, for batch medium resolution.
struct Transmission {
    double start = 0.0;
    double end = 0.0;
    std::uint32_t channel = 0;
};

enum class TxOutcome : std::uint8_t { Delivered, Collided, Corrupted };

/// Per-transmission outcome on a shared medium: a transmission succeeds iff
/// no other transmission overlaps it on the same channel. For the slotted
/// techniques (S-ALOHA, TDMA) overlap is evaluated on whole tau-wide slots.
/// Each otherwise-successful transmission then fails independently with
/// probability P when P is set (drawn from a stream derived from `seed`).
std::vector<TxOutcome> resolve_medium(std::span<const Transmission> transmissions,
                                      AccessTechnique tech, double tau, std::optional<double> P,
                                      std::uint64_t seed);

/// Recomputes log-derived statistics (counts, measured load/throughput,
/// delay moments). Collision/drop/in-flight counters live in the engine and
/// are filled in by run().
SimStats measure(std::span<const PacketRecord> log, const SimConfig& config);

/// Packet trace export: `id,source,created_at,attempts,delivered_at`, times
/// in seconds with 9 decimal places, empty delivered_at when undelivered.
void write_packet_trace(std::ostream& out, std::span<const PacketRecord> log);

enum class EventKind : std::uint8_t {
    TransmissionEnd = 0,
    ExchangeComplete = 1,
    TransmissionStart = 2,
    Sense = 3,
    Arrival = 4,
};

struct Event {
    double time = 0.0;
    std::uint32_t node = 0;
    EventKind kind = EventKind::Arrival;
    std::uint64_t seq = 0;     ///< insertion order, last tie-breaker
    std::uint64_t packet = 0;  ///< subject packet id where applicable
};

enum class NodePhase : std::uint8_t {
    Idle,         ///< no packet in service
    WaitingSlot,  ///< start scheduled (slot boundary, owned slot, or retry)
    Contending,   ///< CSMA/CA sense pending
    Backoff,      ///< CSMA/CA backoff timer running
    Transmitting, ///< frame (or RTS) on the medium
    Exchange,     ///< CSMA/CA reserved handshake in progress
};

/// Deterministic single-run discrete-event engine. One global event queue
/// ordered by time with stable tie-breaking on node index, then event kind,
/// then insertion order. The stepping interface exists so tests can drive
/// individual state-machine transitions; run() is the usual entry point.
class Simulator {
public:
    explicit Simulator(const SimConfig& config);
    ~Simulator();
    Simulator(Simulator&&) noexcept;
    Simulator& operator=(Simulator&&) noexcept;
    Simulator(const Simulator&) = delete;
    Simulator& operator=(const Simulator&) = delete;

    /// Adds an externally scripted arrival (time must not precede now()).
    void inject_arrival(std::uint32_t node, double time);

    /// Processes the next event at or before the horizon. Returns false when
    /// nothing remains to process.
    bool step();
    void run_to_horizon();

    double now() const;
    NodePhase node_phase(std::uint32_t node) const;
    std::size_t queue_length(std::uint32_t node) const;
    /// Snapshot of unprocessed events in dispatch order (test helper).
    std::vector<Event> pending_events() const;

    RunResult result() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Validates the config, simulates until the horizon and returns the exact
/// counters plus the full packet log.
RunResult run(const SimConfig& config);

}  // namespace macsim
