#pragma once

#include <string>
#include <vector>

#include "sc3sim/scenario.hpp"

namespace sc3sim {

enum class RunOutcome { Success, OomAtStartup, Timeout, LinkFailure };

std::string_view to_string(RunOutcome o);

// Per-closed-loop latency decomposition; total is exactly the sum of phases.
struct LoopTrace {
    std::uint64_t loop = 0;
    SubTaskKind subtask_at_start = SubTaskKind::Search;
    SimTime t_capture_us = 0;
    SimTime t_uplink_us = 0;
    SimTime t_infer_us = 0;
    SimTime t_reason_us = 0;
    SimTime t_downlink_us = 0;
    SimTime total_us = 0;
    double confidence = 0.0;
};

struct RunSummary {
    RunOutcome outcome = RunOutcome::Timeout;
    std::uint64_t loops = 0;
    double mean_total_ms = 0.0;
    double p95_total_ms = 0.0;
    double mean_capture_ms = 0.0;
    double mean_uplink_ms = 0.0;
    double mean_infer_ms = 0.0;
    double mean_reason_ms = 0.0;
    double mean_downlink_ms = 0.0;
    double loss_rate = 0.0;
    double deadline_miss_rate = 0.0;
    std::uint64_t oom_events = 0;
    std::string trace_digest;

    // Derived extras used by compare tables and reporting.
    double slot_latency_stddev_us = 0.0;
    double stream_mbps = 0.0;
    std::uint64_t slots = 0;
    std::uint64_t missed_slots = 0;
    std::uint64_t dropped_uplinks = 0;
    std::uint64_t dropped_downlinks = 0;
    SimTime end_time_us = 0;
};

struct RunResult {
    RunSummary summary;
    std::vector<LoopTrace> loops;
    std::vector<KpiSnapshot> kpis;
    std::vector<std::string> trace_lines;
    std::vector<double> slot_durations_us;
};

// Executes one full closed-loop run: container start, slot/burst processes,
// then sense-communicate-compute-control loops until a terminal outcome or
// t_max. Deterministic for a fixed (scenario, seed).
RunResult run_scenario(const Scenario& s);

// Returns a copy of `base` with one swept parameter replaced; parameter is one
// of tier, strategy, seed, b0_mbps, per_mbps_mib. Throws UnknownParameter.
Scenario apply_parameter(Scenario base, const std::string& parameter, const std::string& value);

struct SweepRow {
    std::string value;
    RunSummary summary;
};

// One run per value; rows ordered by input value, not completion order.
std::vector<SweepRow> sweep(const Scenario& base, const std::string& parameter,
                            const std::vector<std::string>& values);

struct StrategyRow {
    StrategyName strategy = StrategyName::Proposed;
    RunSummary summary;
};

// Proposed / StrategyA / StrategyB / SharedNoIsolation on shared defaults.
std::vector<StrategyRow> compare_strategies(const Scenario& base);

void write_trace_jsonl(const RunResult& run, const std::string& path);
void write_loops_csv(const RunResult& run, const std::string& path);
void write_summary_csv(const RunSummary& summary, const std::string& path);
void write_kpis_csv(const RunResult& run, const std::string& path);

std::string summary_csv_header();
std::string summary_csv_row(const RunSummary& summary);
std::string sweep_csv(const std::string& parameter, const std::vector<SweepRow>& rows);
std::string compare_csv(const std::vector<StrategyRow>& rows);

} // namespace sc3sim
