#pragma once

#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "sc3sim/errors.hpp"
#include "sc3sim/event.hpp"
#include "sc3sim/rng.hpp"

namespace sc3sim {

// Pending events ordered by (time, seq); seq is assigned at insertion, so
// equal-time events dequeue in FIFO order.
class EventQueue {
public:
    SimTime now() const { return now_; }

    // Assigns the insertion sequence number and returns it.
    std::uint64_t schedule(SimEvent ev);

    // Pops the minimum (time, seq) event and advances the current time to it.
    SimEvent advance();

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

    // Time of the next event; throws EmptyQueueError when empty.
    SimTime next_time() const;

    // Moves the clock forward without dispatching (never backwards).
    void fast_forward(SimTime t);

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const {
            if (a.time_us != b.time_us) {
                return a.time_us > b.time_us;
            }
            return a.seq > b.seq;
        }
    };

    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
    std::uint64_t next_seq_ = 1;
    SimTime now_ = 0;
};

// Append-only record of every dispatched event, serialized as canonical
// JSON-lines. The SHA-256 of the byte stream is the run fingerprint.
class TraceLog {
public:
    void append(const SimEvent& ev);

    const std::vector<std::string>& lines() const { return lines_; }
    std::size_t size() const { return lines_.size(); }

    std::string digest() const;

    // Serializes one event in canonical field order (time_us, seq, kind, payload).
    static std::string to_line(const SimEvent& ev);

private:
    std::vector<std::string> lines_;
};

// Single-threaded deterministic discrete-event engine. Handlers may mutate the
// event payload in place; the enriched event is what lands in the trace.
class Kernel {
public:
    explicit Kernel(std::uint64_t seed) : rng_(seed) {}

    SimTime now() const { return queue_.now(); }

    void schedule(SimTime t, EventKind kind, Json payload = Json::object());

    using Handler = std::function<void(SimEvent&)>;
    void set_handler(Handler h) { handler_ = std::move(h); }

    // Dispatches every event with time <= t_end in (time, seq) order, or until
    // a handler requests a stop. Handler exceptions surface as HandlerFault.
    void run_until(SimTime t_end);

    void request_stop() { stop_requested_ = true; }
    bool stop_requested() const { return stop_requested_; }

    Rng& rng() { return rng_; }
    EventQueue& queue() { return queue_; }
    TraceLog& trace() { return trace_; }
    const TraceLog& trace() const { return trace_; }

private:
    EventQueue queue_;
    Rng rng_;
    TraceLog trace_;
    Handler handler_;
    bool stop_requested_ = false;
};

} // namespace sc3sim
