#pragma once

#include <cstdint>
#include <string_view>

#include "json.hpp"

namespace sc3sim {

// Microseconds since run start. Integer so slot-level (500 us) and loop-level
// (~680 ms) timing is exactly representable in replay digests.
using SimTime = std::uint64_t;

// Trace payloads keep insertion order so serialized lines have a stable,
// canonical field layout.
using Json = nlohmann::ordered_json;

enum class EventKind {
    SlotTick,
    FrameCaptured,
    UplinkDelivered,
    InferenceDone,
    PlanStep,
    CommandDelivered,
    BurstOn,
    BurstOff,
    ContainerStart,
    MissionEnd,
};

constexpr std::string_view to_string(EventKind kind) {
    switch (kind) {
    case EventKind::SlotTick: return "SlotTick";
    case EventKind::FrameCaptured: return "FrameCaptured";
    case EventKind::UplinkDelivered: return "UplinkDelivered";
    case EventKind::InferenceDone: return "InferenceDone";
    case EventKind::PlanStep: return "PlanStep";
    case EventKind::CommandDelivered: return "CommandDelivered";
    case EventKind::BurstOn: return "BurstOn";
    case EventKind::BurstOff: return "BurstOff";
    case EventKind::ContainerStart: return "ContainerStart";
    case EventKind::MissionEnd: return "MissionEnd";
    }
    return "Unknown";
}

struct SimEvent {
    SimTime time_us = 0;
    std::uint64_t seq = 0; // unique insertion counter per run
    EventKind kind = EventKind::SlotTick;
    Json payload = Json::object();
};

} // namespace sc3sim
