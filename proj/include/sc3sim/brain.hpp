#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sc3sim/comm.hpp"
#include "sc3sim/errors.hpp"
#include "sc3sim/event.hpp"

namespace sc3sim {

enum class SubTaskKind { Search, Approach, Complete };

std::string_view to_string(SubTaskKind k);

struct SubTask {
    SubTaskKind kind = SubTaskKind::Search;
    std::string object; // empty for Complete
};

// Ordered sub-tasks compiled from the instruction; the cursor only moves
// forward within a run.
struct MissionPlan {
    std::vector<SubTask> tasks;
    std::size_t cursor = 0;

    const SubTask& current() const { return tasks.at(cursor); }
    bool finished() const { return !tasks.empty() && tasks[cursor].kind == SubTaskKind::Complete; }
    void advance();
};

// Template grammar over a configurable object vocabulary:
//   <FindVerb> [article] <object> and <ApproachVerb> (it | [article] <object>)
//   ["once you detect it"] ["."]
// FindVerb in {find, locate, search for}; ApproachVerb in {approach, go to, fly to}.
MissionPlan parse_instruction(const std::string& text, const std::vector<std::string>& vocabulary);

// Canonical sentence for a plan; parse_instruction round-trips it.
std::string render_instruction(const MissionPlan& plan);

enum class MemoryKind { ActionExecuted, PerceptionOutcome, KpiSample };

std::string_view to_string(MemoryKind k);

struct MemoryRecord {
    SimTime time_us = 0;
    MemoryKind kind = MemoryKind::ActionExecuted;
    Json payload = Json::object();
};

// Chronological ring buffer; oldest records evicted once capacity is hit.
class ContextualMemory {
public:
    explicit ContextualMemory(std::size_t capacity = 256) : capacity_(capacity) {}

    void append(MemoryRecord rec);

    // Newest-first, optionally filtered by kind, at most `limit` records.
    std::vector<MemoryRecord> query(std::optional<MemoryKind> kind, std::size_t limit) const;

    const MemoryRecord* latest(MemoryKind kind) const;

    std::size_t size() const { return records_.size(); }
    std::size_t capacity() const { return capacity_; }
    std::uint64_t total_appended() const { return total_appended_; }

private:
    std::size_t capacity_;
    std::deque<MemoryRecord> records_;
    std::uint64_t total_appended_ = 0;
};

struct ToolDescriptor {
    std::string name;
    Json parameter_schema = Json::object();
};

struct ToolCall {
    std::string name;
    Json arguments = Json::object();
    SimTime issued_us = 0;
    std::string intent; // policy action that produced the call (trace/bookkeeping)
};

struct ToolResult {
    std::string status; // "ok" | "error" | "unknown_tool"
    Json payload = Json::object();

    bool ok() const { return status == "ok"; }
};

// Registered tools dispatched by name. Every dispatch appends exactly one
// ActionExecuted record, unknown tools included.
class Toolbox {
public:
    using ToolHandler = std::function<ToolResult(const Json& arguments)>;

    void register_tool(ToolDescriptor descriptor, ToolHandler handler);
    bool has(const std::string& name) const { return tools_.count(name) != 0; }
    std::vector<std::string> tool_names() const;

    ToolResult dispatch(const ToolCall& call, ContextualMemory& memory);

private:
    struct Entry {
        ToolDescriptor descriptor;
        ToolHandler handler;
    };

    std::map<std::string, Entry> tools_;
};

// Thresholds and limits the reasoning policy needs from the scenario.
struct PolicyConfig {
    double detect_threshold = 0.6;
    double search_yaw_rate = 0.5; // rad/s
    double approach_stop_m = 1.0;
    double v_max = 1.5;
    double yaw_rate_max = 0.8;
};

// One reasoning step: reads the latest perception, advances the plan cursor
// per the policy table, and compiles the chosen action into a
// send_velocity_command call. Throws NoPlanError once the plan is finished.
ToolCall next_action(MissionPlan& plan, const ContextualMemory& memory, const KpiSnapshot& kpis,
                     const PolicyConfig& cfg, SimTime now);

} // namespace sc3sim
