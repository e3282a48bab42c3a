#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "sc3sim/kernel.hpp"

using namespace sc3sim;

namespace {

SimEvent make_event(SimTime t, EventKind kind = EventKind::SlotTick) {
    SimEvent ev;
    ev.time_us = t;
    ev.kind = kind;
    return ev;
}

} // namespace

TEST_CASE("schedule: empty queue accepts an event at t=0") {
    EventQueue q;
    q.schedule(make_event(0));
    CHECK(q.size() == 1);
}

TEST_CASE("schedule: equal-time events dequeue in insertion order") {
    EventQueue q;
    const auto seq_a = q.schedule(make_event(7, EventKind::BurstOn));
    const auto seq_b = q.schedule(make_event(7, EventKind::BurstOff));
    CHECK(seq_a < seq_b);

    CHECK(q.advance().kind == EventKind::BurstOn);
    CHECK(q.advance().kind == EventKind::BurstOff);
}

TEST_CASE("schedule: rejects events in the past") {
    EventQueue q;
    q.schedule(make_event(10));
    (void)q.advance(); // now = 10
    CHECK_THROWS_AS(q.schedule(make_event(9)), SchedulingInPast);
}

TEST_CASE("advance: minimum (time, seq) event wins") {
    EventQueue q;
    q.schedule(make_event(5, EventKind::SlotTick)); // seq 1
    q.schedule(make_event(3, EventKind::BurstOn));  // seq 2
    q.schedule(make_event(3, EventKind::BurstOff)); // seq 3

    const SimEvent ev = q.advance();
    CHECK(ev.time_us == 3);
    CHECK(ev.seq == 2);
    CHECK(q.now() == 3);
}

TEST_CASE("advance: single event at t=0 sets time to 0") {
    EventQueue q;
    q.schedule(make_event(0));
    const SimEvent ev = q.advance();
    CHECK(ev.time_us == 0);
    CHECK(q.now() == 0);
}

TEST_CASE("advance: empty queue raises") {
    EventQueue q;
    CHECK_THROWS_AS(q.advance(), EmptyQueueError);
}

TEST_CASE("run_until: no events yields an empty trace") {
    Kernel k(1);
    k.run_until(1'000'000);
    CHECK(k.trace().size() == 0);
    CHECK(k.now() == 1'000'000);
}

TEST_CASE("run_until: dispatch order matches a brute-force (time, seq) sort over 1000 events") {
    // Independent oracle: record (time, insertion index) pairs and stable-sort
    // by time; stability reproduces the seq tie-break by construction.
    std::mt19937_64 gen(12345);
    std::uniform_int_distribution<SimTime> dist(0, 499); // dense ties

    struct Expected {
        SimTime t;
        std::uint64_t seq;
    };
    std::vector<Expected> expected;

    Kernel k(1);
    for (int i = 0; i < 1000; ++i) {
        const SimTime t = dist(gen);
        SimEvent ev = make_event(t);
        ev.payload["i"] = i;
        const std::uint64_t seq = k.queue().schedule(std::move(ev));
        expected.push_back({t, seq});
    }
    std::stable_sort(expected.begin(), expected.end(),
                     [](const Expected& a, const Expected& b) { return a.t < b.t; });

    std::vector<Expected> dispatched;
    k.set_handler([&](SimEvent& ev) { dispatched.push_back({ev.time_us, ev.seq}); });
    k.run_until(1'000'000);

    REQUIRE(dispatched.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(dispatched[i].t == expected[i].t);
        CHECK(dispatched[i].seq == expected[i].seq);
    }

    // Monotonicity: dispatched times never decrease.
    for (std::size_t i = 1; i < dispatched.size(); ++i) {
        CHECK(dispatched[i].t >= dispatched[i - 1].t);
    }
}

TEST_CASE("run_until: identical seed and schedule produce identical trace bytes") {
    const auto run_once = [] {
        Kernel k(42);
        k.set_handler([&k](SimEvent& ev) {
            ev.payload["draw"] = k.rng().next_u64();
            if (ev.time_us < 50) {
                k.schedule(ev.time_us + 10, EventKind::BurstOn);
            }
        });
        k.schedule(0, EventKind::SlotTick);
        k.schedule(5, EventKind::FrameCaptured);
        k.run_until(1000);
        return k.trace().lines();
    };

    const auto a = run_once();
    const auto b = run_once();
    CHECK(a == b);
    CHECK_FALSE(a.empty());
}

TEST_CASE("run_until: conservation - every event dispatched once or still queued") {
    Kernel k(7);
    int dispatched = 0;
    k.set_handler([&](SimEvent&) { ++dispatched; });
    for (SimTime t = 0; t < 20; ++t) {
        k.schedule(t * 100, EventKind::SlotTick);
    }
    k.run_until(900); // events at 0..900 inclusive

    CHECK(dispatched == 10);
    CHECK(k.queue().size() == 10);
    CHECK(k.trace().size() == 10);
}

TEST_CASE("run_until: handler exceptions surface as HandlerFault") {
    Kernel k(1);
    k.set_handler([](SimEvent& ev) {
        if (ev.kind == EventKind::MissionEnd) {
            throw std::logic_error("inconsistent state");
        }
    });
    k.schedule(10, EventKind::MissionEnd);
    CHECK_THROWS_AS(k.run_until(100), HandlerFault);
    CHECK(k.trace().size() == 1); // the faulting event is still traced
}

TEST_CASE("run_until: stop request leaves later events queued") {
    Kernel k(3);
    k.set_handler([&k](SimEvent& ev) {
        if (ev.time_us == 100) {
            k.request_stop();
        }
    });
    k.schedule(100, EventKind::SlotTick);
    k.schedule(200, EventKind::SlotTick);
    k.run_until(1000);

    CHECK(k.trace().size() == 1);
    CHECK(k.queue().size() == 1);
}

TEST_CASE("trace: canonical field order and digest stability") {
    SimEvent ev = make_event(12, EventKind::PlanStep);
    ev.seq = 4;
    ev.payload = Json{{"loop", 2}, {"intent", "hover"}};
    const std::string line = TraceLog::to_line(ev);
    CHECK(line == R"({"time_us":12,"seq":4,"kind":"PlanStep","payload":{"loop":2,"intent":"hover"}})");

    TraceLog log;
    log.append(ev);
    CHECK(log.digest() == log.digest());
    CHECK(log.digest().size() == 64);
}

TEST_CASE("rng: splitmix64 stream is reproducible and positioned") {
    Rng a(99);
    Rng b(99);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    CHECK(a.draws() == 100);

    Rng c(100);
    CHECK(c.next_u64() != Rng(99).next_u64());

    Rng d(7);
    for (int i = 0; i < 1000; ++i) {
        const double u = d.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(d.next_exponential(0.8) >= 0.0);
    }
}
