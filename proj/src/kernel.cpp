#include "sc3sim/kernel.hpp"

#include <utility>

#include "sc3sim/digest.hpp"

namespace sc3sim {

std::uint64_t EventQueue::schedule(SimEvent ev) {
    if (ev.time_us < now_) {
        throw SchedulingInPast("event at t=" + std::to_string(ev.time_us) +
                               "us scheduled in the past (now=" + std::to_string(now_) + "us)");
    }
    ev.seq = next_seq_++;
    const std::uint64_t seq = ev.seq;
    heap_.push(std::move(ev));
    return seq;
}

SimEvent EventQueue::advance() {
    if (heap_.empty()) {
        throw EmptyQueueError("advance on empty event queue");
    }
    SimEvent ev = heap_.top();
    heap_.pop();
    now_ = ev.time_us;
    return ev;
}

SimTime EventQueue::next_time() const {
    if (heap_.empty()) {
        throw EmptyQueueError("next_time on empty event queue");
    }
    return heap_.top().time_us;
}

void EventQueue::fast_forward(SimTime t) {
    if (t > now_) {
        now_ = t;
    }
}

std::string TraceLog::to_line(const SimEvent& ev) {
    Json line;
    line["time_us"] = ev.time_us;
    line["seq"] = ev.seq;
    line["kind"] = std::string(to_string(ev.kind));
    line["payload"] = ev.payload;
    return line.dump();
}

void TraceLog::append(const SimEvent& ev) {
    lines_.push_back(to_line(ev));
}

std::string TraceLog::digest() const {
    Sha256 h;
    for (const auto& line : lines_) {
        h.update(line);
        h.update("\n");
    }
    return h.hex_digest();
}

void Kernel::schedule(SimTime t, EventKind kind, Json payload) {
    SimEvent ev;
    ev.time_us = t;
    ev.kind = kind;
    ev.payload = std::move(payload);
    queue_.schedule(std::move(ev));
}

void Kernel::run_until(SimTime t_end) {
    while (!stop_requested_ && !queue_.empty() && queue_.next_time() <= t_end) {
        SimEvent ev = queue_.advance();
        if (handler_) {
            try {
                handler_(ev);
            } catch (const HandlerFault&) {
                trace_.append(ev);
                throw;
            } catch (const std::exception& e) {
                trace_.append(ev);
                throw HandlerFault(std::string("handler fault on ") + std::string(to_string(ev.kind)) +
                                   ": " + e.what());
            }
        }
        trace_.append(ev);
    }
    if (!stop_requested_) {
        queue_.fast_forward(t_end);
    }
}

} // namespace sc3sim
