#include "macsim/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

namespace macsim {

namespace {

constexpr std::uint64_t kPurposeArrivals = 0x61727269;
constexpr std::uint64_t kPurposeBackoff = 0x6261636b;
constexpr std::uint64_t kPurposeCorruption = 0x636f7272;

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t node, std::uint64_t purpose)
{
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (node * 0x9e3779b97f4a7c15ULL) ^ (purpose << 32);
    return splitmix64(s);
}

// Explicit uniform/exponential mappings so draws depend only on the raw
// engine sequence, not on a standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double exponential(double rate)
    {
        return -std::log1p(-uniform01()) / rate;
    }

    int uniform_int(int lo, int hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

private:
    std::mt19937_64 engine_;
};

bool is_slotted(AccessTechnique tech)
{
    return tech == AccessTechnique::SlottedAloha || tech == AccessTechnique::Tdma;
}

bool corruption_applies(AccessTechnique tech)
{
    // Per-packet error probability is specified for FDMA and S-ALOHA only.
    return tech == AccessTechnique::Fdma || tech == AccessTechnique::SlottedAloha;
}

// Smallest k with k*tau >= t.
std::int64_t slot_ceil(double t, double tau)
{
    auto k = static_cast<std::int64_t>(std::ceil(t / tau - 1e-9));
    if (k < 0) k = 0;
    while (static_cast<double>(k) * tau < t - 1e-12 * (1.0 + t)) ++k;
    return k;
}

std::int64_t slot_floor(double t, double tau)
{
    auto k = static_cast<std::int64_t>(std::floor(t / tau + 1e-9));
    return k < 0 ? 0 : k;
}

}  // namespace

std::vector<double> generate_arrivals(std::uint64_t seed, std::uint32_t node, double lambda,
                                      double horizon)
{
    if (!(lambda >= 0.0)) throw domain_error("lambda must be >= 0");
    if (!(horizon > 0.0)) throw validation_error("horizon > 0 violated");
    std::vector<double> times;
    if (lambda == 0.0) return times;
    Rng rng(stream_seed(seed, node, kPurposeArrivals));
    double t = rng.exponential(lambda);
    while (t < horizon) {
        times.push_back(t);
        t += rng.exponential(lambda);
    }
    return times;
}

std::vector<TxOutcome> resolve_medium(std::span<const Transmission> transmissions,
                                      AccessTechnique tech, double tau, std::optional<double> P,
                                      std::uint64_t seed)
{
    const std::size_t n = transmissions.size();
    std::vector<TxOutcome> outcome(n, TxOutcome::Delivered);
    const bool slotted = is_slotted(tech);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Transmission& a = transmissions[i];
            const Transmission& b = transmissions[j];
            if (a.channel != b.channel) continue;
            bool clash;
            if (slotted) {
                const std::int64_t a0 = slot_floor(a.start, tau);
                const std::int64_t a1 = slot_floor(std::nexttoward(a.end, a.start), tau);
                const std::int64_t b0 = slot_floor(b.start, tau);
                const std::int64_t b1 = slot_floor(std::nexttoward(b.end, b.start), tau);
                clash = !(a1 < b0 || b1 < a0);
            } else {
                clash = a.start < b.end && b.start < a.end;
            }
            if (clash) {
                outcome[i] = TxOutcome::Collided;
                outcome[j] = TxOutcome::Collided;
            }
        }
    }
    if (P && *P > 0.0) {
        Rng rng(stream_seed(seed, 0, kPurposeCorruption));
        for (std::size_t i = 0; i < n; ++i)
            if (outcome[i] == TxOutcome::Delivered && rng.uniform01() < *P)
                outcome[i] = TxOutcome::Corrupted;
    }
    return outcome;
}

SimStats measure(std::span<const PacketRecord> log, const SimConfig& config)
{
    SimStats stats;
    stats.generated = log.size();
    double sum_delay = 0.0;
    double max_delay = 0.0;
    for (const PacketRecord& rec : log) {
        if (!rec.delivered_at) continue;
        ++stats.delivered;
        const double d = *rec.delivered_at - rec.created_at;
        sum_delay += d;
        max_delay = std::max(max_delay, d);
    }
    const double frame = config.params.frame_time();
    stats.measured_G = static_cast<double>(stats.generated) * frame / config.horizon;
    stats.measured_T = static_cast<double>(stats.delivered) * frame / config.horizon;
    if (stats.delivered > 0) {
        stats.mean_delay = sum_delay / static_cast<double>(stats.delivered);
        stats.max_delay = max_delay;
    }
    return stats;
}

void write_packet_trace(std::ostream& out, std::span<const PacketRecord> log)
{
    out << "id,source,created_at,attempts,delivered_at\n";
    char buf[64];
    for (const PacketRecord& rec : log) {
        out << rec.id << ',' << rec.source << ',';
        std::snprintf(buf, sizeof buf, "%.9f", rec.created_at);
        out << buf << ',' << rec.attempts << ',';
        if (rec.delivered_at) {
            std::snprintf(buf, sizeof buf, "%.9f", *rec.delivered_at);
            out << buf;
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Event engine
// ---------------------------------------------------------------------------

namespace {

struct EventOrder {
    // min-heap on (time, node, kind, seq)
    bool operator()(const Event& a, const Event& b) const
    {
        if (a.time != b.time) return a.time > b.time;
        if (a.node != b.node) return a.node > b.node;
        if (a.kind != b.kind) return a.kind > b.kind;
        return a.seq > b.seq;
    }
};

struct ActiveTx {
    std::uint64_t packet = 0;
    std::uint32_t node = 0;
    double start = 0.0;
    double end = 0.0;
    std::uint32_t channel = 0;
    std::int64_t slot_first = -1;  ///< -1 for unslotted transmissions
    std::int64_t slot_last = -1;
    bool collided = false;
};

struct NodeRuntime {
    std::deque<std::uint64_t> queue;
    NodePhase phase = NodePhase::Idle;
};

}  // namespace

struct Simulator::Impl {
    SimConfig config;
    double frame = 0.0;       ///< on-air time of one data frame, s
    double prop = 0.0;        ///< propagation delay a*(L/C), s
    double sifs = 0.0;
    double t_rts = 0.0, t_cts = 0.0, t_ack = 0.0;

    std::priority_queue<Event, std::vector<Event>, EventOrder> events;
    std::uint64_t next_seq = 0;
    double clock = 0.0;
    bool horizon_reached = false;

    std::vector<NodeRuntime> nodes;
    std::vector<Rng> backoff_rng;
    std::vector<Rng> corruption_rng;
    std::vector<PacketRecord> records;
    std::vector<ActiveTx> active;

    bool nav_active = false;
    double nav_start = 0.0, nav_end = 0.0;

    std::uint64_t collided_txs = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped = 0;

    explicit Impl(const SimConfig& cfg) : config(cfg)
    {
        validate_params(config.params);
        if (!(config.horizon > 0.0)) throw validation_error("horizon > 0 violated");
        if (config.backoff_window < 1)
            throw validation_error("backoff_window >= 1 violated");
        if (config.retry_limit < 0) throw validation_error("retry_limit >= 0 violated");
        if (config.csma.max_retries < 0)
            throw validation_error("csma.max_retries >= 0 violated");
        if (config.csma.rts_bits < 0 || config.csma.cts_bits < 0 || config.csma.ack_bits < 0)
            throw validation_error("csma frame sizes >= 0 violated");
        if (config.csma.sifs && !(*config.csma.sifs >= 0.0))
            throw validation_error("csma.sifs >= 0 violated");

        const TechniqueParams& p = config.params;
        frame = p.frame_time();
        if (config.technique == AccessTechnique::Fdma)
            frame = static_cast<double>(p.N) * p.frame_time();  // per-node band C/N
        prop = p.a * p.frame_time();
        sifs = config.csma.sifs.value_or(p.tau / 50.0);
        t_rts = static_cast<double>(config.csma.rts_bits) / p.C;
        t_cts = static_cast<double>(config.csma.cts_bits) / p.C;
        t_ack = static_cast<double>(config.csma.ack_bits) / p.C;

        const auto n = static_cast<std::uint32_t>(p.N);
        nodes.resize(n);
        backoff_rng.reserve(n);
        corruption_rng.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            backoff_rng.emplace_back(stream_seed(config.seed, i, kPurposeBackoff));
            corruption_rng.emplace_back(stream_seed(config.seed, i, kPurposeCorruption));
        }

        const double lambda = p.require_lambda("run");
        std::vector<std::pair<double, std::uint32_t>> all;
        for (std::uint32_t i = 0; i < n; ++i)
            for (double t : generate_arrivals(config.seed, i, lambda, config.horizon))
                all.emplace_back(t, i);
        std::sort(all.begin(), all.end());
        records.reserve(all.size());
        for (const auto& [t, node] : all) new_packet(node, t);
    }

    void new_packet(std::uint32_t node, double t)
    {
        PacketRecord rec;
        rec.id = records.size();
        rec.source = node;
        rec.created_at = t;
        records.push_back(rec);
        push_event({t, node, EventKind::Arrival, 0, rec.id});
    }

    void push_event(Event ev)
    {
        ev.seq = next_seq++;
        events.push(ev);
    }

    // --- medium -----------------------------------------------------------

    std::uint32_t channel_of(std::uint32_t node) const
    {
        return config.technique == AccessTechnique::Fdma ? node : 0;
    }

    void begin_transmission(std::uint32_t node, std::uint64_t packet, double t, double duration)
    {
        ActiveTx tx;
        tx.packet = packet;
        tx.node = node;
        tx.start = t;
        tx.end = t + duration;
        tx.channel = channel_of(node);
        if (is_slotted(config.technique)) {
            tx.slot_first = slot_floor(t, config.params.tau);
            tx.slot_last =
                tx.slot_first +
                static_cast<std::int64_t>(std::ceil(duration / config.params.tau - 1e-9)) - 1;
            if (tx.slot_last < tx.slot_first) tx.slot_last = tx.slot_first;
        }
        for (ActiveTx& other : active) {
            if (other.channel != tx.channel) continue;
            bool clash;
            if (is_slotted(config.technique))
                clash = !(other.slot_last < tx.slot_first || tx.slot_last < other.slot_first);
            else
                clash = other.end > t;  // strict: a transmission ending exactly now is gone
            if (clash) {
                other.collided = true;
                tx.collided = true;
            }
        }
        active.push_back(tx);
        records[packet].attempts += 1;
        nodes[node].phase = NodePhase::Transmitting;
        push_event({tx.end, node, EventKind::TransmissionEnd, 0, packet});
    }

    ActiveTx pop_active(std::uint64_t packet)
    {
        for (std::size_t i = 0; i < active.size(); ++i) {
            if (active[i].packet == packet) {
                ActiveTx tx = active[i];
                active.erase(active.begin() + static_cast<std::ptrdiff_t>(i));
                return tx;
            }
        }
        assert(false && "transmission end without active transmission");
        return {};
    }

    bool medium_busy(std::uint32_t node, double t) const
    {
        if (nav_active && nav_end > t) return true;
        for (const ActiveTx& tx : active) {
            if (tx.node == node) continue;
            if (tx.start + prop <= t && tx.end > t) return true;
        }
        return false;
    }

    // --- per-technique scheduling ------------------------------------------

    std::int64_t next_owned_slot(std::uint32_t node, double t) const
    {
        const std::int64_t k0 = slot_ceil(t, config.params.tau);
        const auto n = static_cast<std::int64_t>(config.params.N);
        const std::int64_t offset = ((node - k0) % n + n) % n;
        return k0 + offset;
    }

    // Schedules the first medium action for the head-of-queue packet.
    void schedule_head(std::uint32_t node, double t)
    {
        NodeRuntime& nr = nodes[node];
        assert(!nr.queue.empty());
        const std::uint64_t packet = nr.queue.front();
        switch (config.technique) {
            case AccessTechnique::PureAloha:
            case AccessTechnique::Fdma:
                nr.phase = NodePhase::WaitingSlot;
                push_event({t, node, EventKind::TransmissionStart, 0, packet});
                break;
            case AccessTechnique::SlottedAloha: {
                const double start =
                    static_cast<double>(slot_ceil(t, config.params.tau)) * config.params.tau;
                nr.phase = NodePhase::WaitingSlot;
                push_event({start, node, EventKind::TransmissionStart, 0, packet});
                break;
            }
            case AccessTechnique::Tdma: {
                const double start =
                    static_cast<double>(next_owned_slot(node, t)) * config.params.tau;
                nr.phase = NodePhase::WaitingSlot;
                push_event({start, node, EventKind::TransmissionStart, 0, packet});
                break;
            }
            case AccessTechnique::CsmaCa:
                nr.phase = NodePhase::Contending;
                push_event({t, node, EventKind::Sense, 0, packet});
                break;
        }
    }

    void finish_packet(std::uint32_t node, double t)
    {
        NodeRuntime& nr = nodes[node];
        nr.queue.pop_front();
        if (nr.queue.empty())
            nr.phase = NodePhase::Idle;
        else
            schedule_head(node, t);
    }

    void schedule_retry(std::uint32_t node, std::uint64_t packet, double t)
    {
        const int slots = backoff_rng[node].uniform_int(1, config.backoff_window);
        double start = t + static_cast<double>(slots) * config.params.tau;
        if (config.technique == AccessTechnique::SlottedAloha)
            start = static_cast<double>(slot_ceil(start, config.params.tau)) * config.params.tau;
        nodes[node].phase = NodePhase::WaitingSlot;
        push_event({start, node, EventKind::TransmissionStart, 0, packet});
    }

    // --- event handlers -----------------------------------------------------

    void on_arrival(const Event& ev)
    {
        NodeRuntime& nr = nodes[ev.node];
        nr.queue.push_back(ev.packet);
        if (nr.phase == NodePhase::Idle) schedule_head(ev.node, ev.time);
    }

    void on_transmission_start(const Event& ev)
    {
        begin_transmission(ev.node, ev.packet, ev.time, frame);
    }

    void deliver(std::uint32_t node, std::uint64_t packet, double t)
    {
        records[packet].delivered_at = t + prop;
        ++delivered;
        finish_packet(node, t);
    }

    void on_transmission_end(const Event& ev)
    {
        if (config.technique == AccessTechnique::CsmaCa) {
            on_rts_end(ev);
            return;
        }
        const ActiveTx tx = pop_active(ev.packet);
        bool failed = tx.collided;
        if (failed) ++collided_txs;
        if (!failed && corruption_applies(config.technique) && config.params.P &&
            *config.params.P > 0.0) {
            failed = corruption_rng[ev.node].uniform01() < *config.params.P;
        }
        if (!failed) {
            deliver(ev.node, ev.packet, ev.time);
            return;
        }
        if (records[ev.packet].attempts <
            static_cast<std::uint32_t>(1 + config.retry_limit)) {
            schedule_retry(ev.node, ev.packet, ev.time);
        } else {
            ++dropped;
            finish_packet(ev.node, ev.time);
        }
    }

    // --- CSMA/CA ------------------------------------------------------------

    double exchange_span() const
    {
        // CTS, data and ACK separated by SIFS, following a successful RTS.
        return sifs + t_cts + sifs + frame + sifs + t_ack;
    }

    void backoff_then_sense(std::uint32_t node, std::uint64_t packet, double t)
    {
        const int slots = backoff_rng[node].uniform_int(1, config.backoff_window);
        nodes[node].phase = NodePhase::Backoff;
        push_event({t + static_cast<double>(slots) * config.params.tau, node, EventKind::Sense, 0,
                    packet});
    }

    void on_sense(const Event& ev)
    {
        if (medium_busy(ev.node, ev.time)) {
            backoff_then_sense(ev.node, ev.packet, ev.time);
            return;
        }
        begin_transmission(ev.node, ev.packet, ev.time, t_rts);
    }

    void on_rts_end(const Event& ev)
    {
        const ActiveTx tx = pop_active(ev.packet);
        if (!tx.collided) {
            // Handshake granted: the exchange reserves the medium until the
            // ACK completes.
            nav_active = true;
            nav_start = ev.time;
            nav_end = ev.time + exchange_span();
            nodes[ev.node].phase = NodePhase::Exchange;
            push_event({nav_end, ev.node, EventKind::ExchangeComplete, 0, ev.packet});
            return;
        }
        ++collided_txs;
        if (records[ev.packet].attempts <
            static_cast<std::uint32_t>(1 + config.csma.max_retries)) {
            // CTS never arrives; wait out the CTS window, then back off.
            backoff_then_sense(ev.node, ev.packet, ev.time + sifs + t_cts);
        } else {
            ++dropped;
            finish_packet(ev.node, ev.time);
        }
    }

    void on_exchange_complete(const Event& ev)
    {
        nav_active = false;
        deliver(ev.node, ev.packet, ev.time);
    }

    // --- loop ----------------------------------------------------------------

    bool step()
    {
        while (!events.empty()) {
            const Event ev = events.top();
            if (ev.time > config.horizon) {
                horizon_reached = true;
                return false;
            }
            events.pop();
            clock = ev.time;
            switch (ev.kind) {
                case EventKind::Arrival: on_arrival(ev); break;
                case EventKind::TransmissionStart: on_transmission_start(ev); break;
                case EventKind::TransmissionEnd: on_transmission_end(ev); break;
                case EventKind::Sense: on_sense(ev); break;
                case EventKind::ExchangeComplete: on_exchange_complete(ev); break;
            }
            return true;
        }
        horizon_reached = true;
        return false;
    }

    RunResult make_result() const
    {
        RunResult out;
        out.packets = records;
        SimConfig cfg = config;
        out.stats = measure(out.packets, cfg);
        out.stats.collided_transmissions = collided_txs;
        out.stats.dropped = dropped;
        assert(out.stats.delivered == delivered);
        out.stats.in_flight = out.stats.generated - out.stats.delivered - dropped;
        return out;
    }
};

Simulator::Simulator(const SimConfig& config) : impl_(std::make_unique<Impl>(config)) {}
Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

void Simulator::inject_arrival(std::uint32_t node, double time)
{
    if (node >= impl_->nodes.size()) throw validation_error("node index out of range");
    if (time < impl_->clock) throw validation_error("arrival in the past");
    impl_->new_packet(node, time);
}

bool Simulator::step() { return impl_->step(); }

void Simulator::run_to_horizon()
{
    while (impl_->step()) {
    }
}

double Simulator::now() const { return impl_->clock; }

NodePhase Simulator::node_phase(std::uint32_t node) const
{
    return impl_->nodes.at(node).phase;
}

std::size_t Simulator::queue_length(std::uint32_t node) const
{
    return impl_->nodes.at(node).queue.size();
}

std::vector<Event> Simulator::pending_events() const
{
    auto copy = impl_->events;
    std::vector<Event> out;
    out.reserve(copy.size());
    while (!copy.empty()) {
        out.push_back(copy.top());
        copy.pop();
    }
    return out;
}

RunResult Simulator::result() const { return impl_->make_result(); }

RunResult run(const SimConfig& config)
{
    Simulator sim(config);
    sim.run_to_horizon();
    return sim.result();
}

}  // namespace macsim
