#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sc3sim/brain.hpp"
#include "sc3sim/comm.hpp"
#include "sc3sim/inference.hpp"
#include "sc3sim/partition.hpp"
#include "sc3sim/world.hpp"

namespace sc3sim {

// Fully resolved run configuration. The JSON schema is strict: unknown fields
// are rejected so no setting can silently fall back to a default.
struct Scenario {
    AcceleratorSpec accelerator;
    StrategyName strategy = StrategyName::Proposed;
    PartitionLayout custom_layout; // only with strategy == Custom
    ResolutionTier tier = ResolutionTier::High;
    SlotConfig slot;
    BufferModel buffer;
    LinkConfig link;
    ModelProfile model;
    TierTable tiers;
    ConfidenceModel confidence;
    WorldModel world;
    PolicyConfig policy;
    std::vector<std::string> vocabulary{"chair", "ladder", "door"};
    std::string instruction = "Find a chair and approach it once you detect it.";
    std::uint64_t seed = 0;
    SimTime t_max_us = 120'000'000;
    double interference_j_mean = 0.8;
    SimTime reasoning_us = 2000;
    SimTime kpi_window_us = 1'000'000;
    double link_failure_loss = 0.25;      // over any 5 s window
    SimTime link_failure_window_us = 5'000'000;
    bool mission_enabled = true;
    std::map<SubTaskKind, ResolutionTier> tier_schedule; // optional per-phase override

    PartitionLayout effective_layout() const;
};

// Parses and validates; fills defaults for absent fields.
// Throws SchemaError (unknown/ill-typed fields, missing seed), LayoutInvalid.
Scenario scenario_from_json(const Json& j);

// Reads the file at `path`; IoError on filesystem problems.
Scenario load_scenario(const std::string& path);

} // namespace sc3sim
