#include "sc3sim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include "sc3sim/kernel.hpp"

namespace sc3sim {

std::string_view to_string(RunOutcome o) {
    switch (o) {
    case RunOutcome::Success: return "Success";
    case RunOutcome::OomAtStartup: return "OomAtStartup";
    case RunOutcome::Timeout: return "Timeout";
    case RunOutcome::LinkFailure: return "LinkFailure";
    }
    return "Unknown";
}

namespace {

double rounded(double v, double scale = 1e6) {
    return std::round(v * scale) / scale;
}

// Single closed-loop mission run: owns the kernel, workloads, world, and the
// agentic brain, and wires the event choreography between them.
class MissionRun {
public:
    explicit MissionRun(const Scenario& s)
        : s_(s),
          kernel_(s.seed),
          layout_(s.effective_layout()),
          container_(s.model),
          world_(s.world),
          active_tier_(s.tier) {}

    RunResult execute() {
        setup();
        kernel_.run_until(s_.t_max_us);
        if (!outcome_set_) {
            // No terminal event fired before the horizon.
            const RunOutcome fallback = s_.mission_enabled ? RunOutcome::Timeout : RunOutcome::Success;
            finish_run(fallback);
            kernel_.run_until(s_.t_max_us);
        }
        return collect();
    }

private:
    void setup() {
        kernel_.set_handler([this](SimEvent& ev) { handle(ev); });
        register_tools();
        sync_comm_ledger();

        if (s_.mission_enabled) {
            plan_ = parse_instruction(s_.instruction, s_.vocabulary);
            kernel_.schedule(0, EventKind::ContainerStart);
        }
        kernel_.schedule(0, EventKind::SlotTick);
        kernel_.schedule(exp_us(s_.buffer.burst_mean_off_ms), EventKind::BurstOn);
    }

    void handle(SimEvent& ev) {
        switch (ev.kind) {
        case EventKind::ContainerStart: on_container_start(ev); break;
        case EventKind::SlotTick: on_slot_tick(ev); break;
        case EventKind::BurstOn: on_burst(ev, true); break;
        case EventKind::BurstOff: on_burst(ev, false); break;
        case EventKind::FrameCaptured: on_frame_captured(ev); break;
        case EventKind::UplinkDelivered: on_uplink_delivered(ev); break;
        case EventKind::InferenceDone: on_inference_done(ev); break;
        case EventKind::PlanStep: on_plan_step(ev); break;
        case EventKind::CommandDelivered: on_command_delivered(ev); break;
        case EventKind::MissionEnd: on_mission_end(ev); break;
        }
    }

    // --- workload plumbing -------------------------------------------------

    double offered_mbps() const { return s_.tiers.at(active_tier_).stream_mbps; }

    double current_demand_mib() const {
        return comm_memory_demand(s_.buffer, offered_mbps(), burst_on_);
    }

    double current_drop() const {
        const auto& comm_p = layout_.by_owner(WorkloadOwner::Comm);
        return drop_fraction(current_demand_mib(), static_cast<double>(comm_p.memory_capacity_mib),
                             s_.buffer.static_mib);
    }

    // Tracks the comm stack's memory in the partition ledger: occupancy is the
    // demand clipped to capacity; anything beyond capacity is overflow.
    void sync_comm_ledger() {
        auto& comm_p = layout_.by_owner(WorkloadOwner::Comm);
        const double demand = current_demand_mib();
        buffer_overflow_ = demand > static_cast<double>(comm_p.memory_capacity_mib);
        const std::uint64_t occupancy = std::min(
            comm_p.memory_capacity_mib, static_cast<std::uint64_t>(std::llround(std::max(0.0, demand))));
        if (occupancy > comm_p.memory_used_mib) {
            allocate(comm_p, occupancy - comm_p.memory_used_mib);
        } else if (occupancy < comm_p.memory_used_mib) {
            release(comm_p, comm_p.memory_used_mib - occupancy);
        }
    }

    SimTime exp_us(double mean_ms) {
        return static_cast<SimTime>(std::llround(kernel_.rng().next_exponential(mean_ms) * 1000.0));
    }

    // --- tool registry ------------------------------------------------------

    void register_tools() {
        toolbox_.register_tool(
            ToolDescriptor{"send_velocity_command",
                           Json{{"vx", "m/s"}, {"vy", "m/s"}, {"vz", "m/s"}, {"yaw_rate", "rad/s"}}},
            [this](const Json& args) {
                pending_cmd_ = VelocityCommand{args.value("vx", 0.0), args.value("vy", 0.0),
                                               args.value("vz", 0.0), args.value("yaw_rate", 0.0)};
                return ToolResult{"ok", Json{{"staged", true}}};
            });

        toolbox_.register_tool(
            ToolDescriptor{"set_uplink_resolution", Json{{"tier", "Low|Mid|High"}}},
            [this](const Json& args) {
                if (!args.contains("tier") || !args.at("tier").is_string()) {
                    return ToolResult{"error", Json{{"error", "missing tier argument"}}};
                }
                active_tier_ = tier_from_string(args.at("tier").get<std::string>());
                return ToolResult{"ok", Json{{"tier", std::string(to_string(active_tier_))}}};
            });

        toolbox_.register_tool(
            ToolDescriptor{"run_detection", Json::object()}, [this](const Json&) {
                const Detection d = detection_check(frame_, s_.confidence, s_.tiers);
                return ToolResult{"ok", Json{{"detected", d.detected},
                                             {"confidence", rounded(d.confidence)},
                                             {"distance_m", rounded(frame_.distance_m)},
                                             {"bearing_rad", rounded(frame_.bearing_rad)},
                                             {"yaw_rad", rounded(frame_.yaw_rad)},
                                             {"in_fov", frame_.in_fov},
                                             {"tier", std::string(to_string(frame_.tier))}}};
            });

        toolbox_.register_tool(ToolDescriptor{"get_kpis", Json::object()}, [this](const Json&) {
            const KpiSnapshot k = kpi_.snapshot(kernel_.now(), s_.kpi_window_us);
            return ToolResult{"ok", Json{{"throughput_mbps", rounded(k.throughput_mbps)},
                                         {"loss_rate", rounded(k.loss_rate)},
                                         {"deadline_miss_rate", rounded(k.deadline_miss_rate)},
                                         {"buffer_occupancy_mib", rounded(k.buffer_occupancy_mib)},
                                         {"avg_slot_latency_us", rounded(k.avg_slot_latency_us)}}};
        });
    }

    // --- event handlers -----------------------------------------------------

    void on_container_start(SimEvent& ev) {
        auto& inf_p = layout_.by_owner(WorkloadOwner::Inference);
        const bool ok = container_.start(inf_p);
        ev.payload["weights_mib"] = container_.profile().weights_mib;
        ev.payload["resident"] = ok;
        ev.payload["used_mib"] = inf_p.memory_used_mib;
        if (!ok) {
            ++oom_events_;
            finish_run(RunOutcome::OomAtStartup);
            return;
        }
        if (const Json logged = apply_tier_schedule(plan_.current().kind); !logged.is_null()) {
            ev.payload["tool_calls"] = Json::array({logged});
        }
        begin_loop(kernel_.now());
    }

    void on_slot_tick(SimEvent& ev) {
        sync_comm_ledger();
        const auto& comm_p = layout_.by_owner(WorkloadOwner::Comm);
        const double slowdown =
            effective_slowdown(comm_p, layout_, container_.busy(), kernel_.rng(), s_.interference_j_mean);
        const SlotOutcome out = process_slot(s_.slot, comm_p, slowdown, buffer_overflow_);
        const double drop = current_drop();
        const bool missed = out.result == SlotResult::Missed;

        kpi_.record_slot(SlotSample{kernel_.now(), out.duration_us, missed, drop, offered_mbps(),
                                    static_cast<double>(comm_p.memory_used_mib)});

        ev.payload["duration_us"] = rounded(out.duration_us, 1e3);
        ev.payload["missed"] = missed;
        if (burst_on_) {
            ev.payload["burst"] = true;
        }
        if (drop > 0.0) {
            ev.payload["drop_fraction"] = rounded(drop);
        }

        if (kernel_.now() >= last_kpi_us_ + s_.kpi_window_us) {
            last_kpi_us_ = kernel_.now();
            kpi_rows_.push_back(kpi_.snapshot(kernel_.now(), s_.kpi_window_us));
            const KpiSnapshot wide = kpi_.snapshot(kernel_.now(), s_.link_failure_window_us);
            if (wide.loss_rate > s_.link_failure_loss) {
                finish_run(RunOutcome::LinkFailure);
            }
        }

        const SimTime next = kernel_.now() + s_.slot.slot_us;
        if (next <= s_.t_max_us && !outcome_set_) {
            kernel_.schedule(next, EventKind::SlotTick);
        }
    }

    void on_burst(SimEvent& ev, bool on) {
        burst_on_ = on;
        ev.payload["demand_mib"] = rounded(current_demand_mib(), 1e3);
        const SimTime hold = exp_us(on ? s_.buffer.burst_mean_on_ms : s_.buffer.burst_mean_off_ms);
        const SimTime next = kernel_.now() + hold;
        if (next <= s_.t_max_us && !outcome_set_) {
            kernel_.schedule(next, on ? EventKind::BurstOff : EventKind::BurstOn);
        }
    }

    void begin_loop(SimTime start) {
        loop_start_us_ = start;
        cur_ = LoopTrace{};
        cur_.loop = loop_index_;
        cur_.subtask_at_start = plan_.current().kind;
        kernel_.schedule(start + s_.world.frame_period_us, EventKind::FrameCaptured,
                         Json{{"loop", loop_index_}});
    }

    void abort_loop() {
        ++loop_index_;
        begin_loop(kernel_.now());
    }

    void on_frame_captured(SimEvent& ev) {
        frame_ = world_.capture(active_tier_, kernel_.now());
        capture_end_us_ = kernel_.now();
        cur_.t_capture_us = kernel_.now() - loop_start_us_;

        ev.payload["tier"] = std::string(to_string(frame_.tier));
        ev.payload["distance_m"] = rounded(frame_.distance_m);
        ev.payload["bearing_rad"] = rounded(frame_.bearing_rad);
        ev.payload["in_fov"] = frame_.in_fov;

        const double frame_bytes = s_.tiers.at(active_tier_).still_frame_kb * 1000.0;
        const TransferOutcome out =
            transfer_uplink(s_.link, s_.slot, frame_bytes, current_drop(), kernel_.rng());
        if (out.dropped) {
            ++dropped_uplinks_;
        }
        kernel_.schedule(kernel_.now() + out.latency_us, EventKind::UplinkDelivered,
                         Json{{"loop", cur_.loop},
                              {"dropped", out.dropped},
                              {"latency_us", out.latency_us},
                              {"retransmissions", out.retransmissions},
                              {"frame_kb", s_.tiers.at(active_tier_).still_frame_kb}});
    }

    void on_uplink_delivered(SimEvent& ev) {
        if (ev.payload.value("dropped", false)) {
            abort_loop(); // frame lost past the HARQ cap; next sensor period
            return;
        }
        uplink_end_us_ = kernel_.now();
        cur_.t_uplink_us = kernel_.now() - capture_end_us_;

        auto& inf_p = layout_.by_owner(WorkloadOwner::Inference);
        SimTime completion = 0;
        try {
            completion = container_.submit(inf_p, s_.tiers, active_tier_, kernel_.now(), cur_.loop);
        } catch (const OomError&) {
            ++oom_events_;
            ev.payload["oom"] = true;
            abort_loop();
            return;
        }
        kernel_.schedule(completion, EventKind::InferenceDone,
                         Json{{"loop", cur_.loop},
                              {"duration_us", completion - kernel_.now()},
                              {"tier", std::string(to_string(active_tier_))}});
    }

    void on_inference_done(SimEvent& ev) {
        auto& inf_p = layout_.by_owner(WorkloadOwner::Inference);
        container_.complete(inf_p);
        infer_end_us_ = kernel_.now();
        cur_.t_infer_us = kernel_.now() - uplink_end_us_;

        ToolCall perceive;
        perceive.name = "run_detection";
        perceive.intent = "perceive";
        perceive.issued_us = kernel_.now();
        const ToolResult result = toolbox_.dispatch(perceive, memory_);
        memory_.append(MemoryRecord{kernel_.now(), MemoryKind::PerceptionOutcome, result.payload});
        detection_confidence_ = result.payload.value("confidence", 0.0);

        ev.payload["tool_calls"] = Json::array({Json{{"name", perceive.name},
                                                     {"arguments", perceive.arguments},
                                                     {"status", result.status}}});
        ev.payload["detected"] = result.payload.value("detected", false);
        ev.payload["confidence"] = result.payload.value("confidence", 0.0);

        kernel_.schedule(kernel_.now() + s_.reasoning_us, EventKind::PlanStep, Json{{"loop", cur_.loop}});
    }

    void on_plan_step(SimEvent& ev) {
        reason_end_us_ = kernel_.now();
        cur_.t_reason_us = kernel_.now() - infer_end_us_;

        Json calls = Json::array();

        ToolCall kpi_call;
        kpi_call.name = "get_kpis";
        kpi_call.intent = "observe_kpis";
        kpi_call.issued_us = kernel_.now();
        const ToolResult kpi_result = toolbox_.dispatch(kpi_call, memory_);
        memory_.append(MemoryRecord{kernel_.now(), MemoryKind::KpiSample, kpi_result.payload});
        calls.push_back(Json{{"name", kpi_call.name}, {"arguments", kpi_call.arguments},
                             {"status", kpi_result.status}});

        const SubTaskKind before = plan_.current().kind;
        const ToolCall action =
            next_action(plan_, memory_, kpi_.snapshot(kernel_.now(), s_.kpi_window_us), s_.policy,
                        kernel_.now());
        const ToolResult action_result = toolbox_.dispatch(action, memory_);
        calls.push_back(Json{{"name", action.name}, {"arguments", action.arguments},
                             {"status", action_result.status}});
        if (plan_.current().kind != before) {
            if (const Json logged = apply_tier_schedule(plan_.current().kind); !logged.is_null()) {
                calls.push_back(logged);
            }
        }

        ev.payload["subtask_before"] = std::string(to_string(before));
        ev.payload["subtask_after"] = std::string(to_string(plan_.current().kind));
        ev.payload["intent"] = action.intent;
        ev.payload["tool_calls"] = calls;

        const TransferOutcome out = transfer_downlink(s_.link, s_.slot, current_drop(), kernel_.rng());
        if (out.dropped) {
            ++dropped_downlinks_;
        }
        kernel_.schedule(kernel_.now() + out.latency_us, EventKind::CommandDelivered,
                         Json{{"loop", cur_.loop},
                              {"dropped", out.dropped},
                              {"latency_us", out.latency_us},
                              {"retransmissions", out.retransmissions},
                              {"intent", action.intent}});
    }

    void on_command_delivered(SimEvent& ev) {
        cur_.t_downlink_us = kernel_.now() - reason_end_us_;

        if (ev.payload.value("dropped", false)) {
            world_.advance_to(kernel_.now()); // command lost; previous one stays active
        } else if (pending_cmd_) {
            world_.apply_command(*pending_cmd_, kernel_.now());
        } else {
            world_.advance_to(kernel_.now());
        }
        pending_cmd_.reset();

        const DroneState& st = world_.state();
        ev.payload["position"] = Json::array({rounded(st.position.x), rounded(st.position.y),
                                              rounded(st.position.z)});
        ev.payload["yaw_rad"] = rounded(st.yaw);
        ev.payload["distance_m"] = rounded(world_.distance_to_target());

        cur_.total_us = cur_.t_capture_us + cur_.t_uplink_us + cur_.t_infer_us + cur_.t_reason_us +
                        cur_.t_downlink_us;
        cur_.confidence = detection_confidence_;
        loops_.push_back(cur_);

        const MissionStatus status =
            mission_status(s_.world, st, plan_, kernel_.now(), s_.t_max_us);
        if (status == MissionStatus::Success) {
            finish_run(RunOutcome::Success);
            return;
        }
        ++loop_index_;
        begin_loop(kernel_.now());
    }

    // Returns the logged call entry, or null when nothing was scheduled.
    Json apply_tier_schedule(SubTaskKind subtask) {
        auto it = s_.tier_schedule.find(subtask);
        if (it == s_.tier_schedule.end() || it->second == active_tier_) {
            return Json();
        }
        ToolCall call;
        call.name = "set_uplink_resolution";
        call.intent = "tier_schedule";
        call.issued_us = kernel_.now();
        call.arguments = Json{{"tier", std::string(to_string(it->second))}};
        const ToolResult result = toolbox_.dispatch(call, memory_);
        return Json{{"name", call.name}, {"arguments", call.arguments}, {"status", result.status}};
    }

    void finish_run(RunOutcome outcome) {
        if (outcome_set_) {
            return;
        }
        outcome_set_ = true;
        outcome_ = outcome;
        kernel_.schedule(kernel_.now(), EventKind::MissionEnd,
                         Json{{"outcome", std::string(to_string(outcome))}, {"loops", loops_.size()}});
    }

    void on_mission_end(SimEvent&) { kernel_.request_stop(); }

    // --- aggregation ----------------------------------------------------------

    RunResult collect() {
        RunResult res;
        res.loops = loops_;
        res.kpis = kpi_rows_;
        res.trace_lines = kernel_.trace().lines();

        res.slot_durations_us.reserve(kpi_.samples().size());
        for (const auto& s : kpi_.samples()) {
            res.slot_durations_us.push_back(s.duration_us);
        }

        RunSummary& sum = res.summary;
        sum.outcome = outcome_;
        sum.loops = loops_.size();
        sum.loss_rate = kpi_.overall_loss_rate();
        sum.deadline_miss_rate = kpi_.overall_miss_rate();
        sum.oom_events = oom_events_;
        sum.trace_digest = kernel_.trace().digest();
        sum.slot_latency_stddev_us = kpi_.slot_duration_stddev_us();
        sum.stream_mbps = kpi_.mean_offered_mbps();
        sum.slots = kpi_.slot_count();
        sum.missed_slots = kpi_.missed_count();
        sum.dropped_uplinks = dropped_uplinks_;
        sum.dropped_downlinks = dropped_downlinks_;
        sum.end_time_us = kernel_.now();

        if (!loops_.empty()) {
            const double n = static_cast<double>(loops_.size());
            double c = 0, u = 0, inf = 0, r = 0, d = 0;
            std::vector<double> totals;
            totals.reserve(loops_.size());
            for (const auto& lt : loops_) {
                c += static_cast<double>(lt.t_capture_us);
                u += static_cast<double>(lt.t_uplink_us);
                inf += static_cast<double>(lt.t_infer_us);
                r += static_cast<double>(lt.t_reason_us);
                d += static_cast<double>(lt.t_downlink_us);
                totals.push_back(static_cast<double>(lt.total_us));
            }
            sum.mean_capture_ms = c / n / 1000.0;
            sum.mean_uplink_ms = u / n / 1000.0;
            sum.mean_infer_ms = inf / n / 1000.0;
            sum.mean_reason_ms = r / n / 1000.0;
            sum.mean_downlink_ms = d / n / 1000.0;
            sum.mean_total_ms = (c + u + inf + r + d) / n / 1000.0;

            std::sort(totals.begin(), totals.end());
            const std::size_t idx =
                std::min(totals.size() - 1,
                         static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(totals.size()))) - 1);
            sum.p95_total_ms = totals[idx] / 1000.0;
        }
        return res;
    }

    Scenario s_;
    Kernel kernel_;
    PartitionLayout layout_;
    InferenceContainer container_;
    DroneWorld world_;
    ResolutionTier active_tier_;

    MissionPlan plan_;
    ContextualMemory memory_{256};
    Toolbox toolbox_;
    KpiTracker kpi_;
    std::vector<KpiSnapshot> kpi_rows_;
    SimTime last_kpi_us_ = 0;

    bool burst_on_ = false;
    bool buffer_overflow_ = false;

    std::uint64_t loop_index_ = 0;
    SimTime loop_start_us_ = 0;
    SimTime capture_end_us_ = 0;
    SimTime uplink_end_us_ = 0;
    SimTime infer_end_us_ = 0;
    SimTime reason_end_us_ = 0;
    LoopTrace cur_;
    Frame frame_;
    double detection_confidence_ = 0.0;
    std::optional<VelocityCommand> pending_cmd_;

    std::vector<LoopTrace> loops_;
    std::uint64_t oom_events_ = 0;
    std::uint64_t dropped_uplinks_ = 0;
    std::uint64_t dropped_downlinks_ = 0;

    bool outcome_set_ = false;
    RunOutcome outcome_ = RunOutcome::Timeout;
};

} // namespace

RunResult run_scenario(const Scenario& s) {
    MissionRun run(s);
    return run.execute();
}

Scenario apply_parameter(Scenario base, const std::string& parameter, const std::string& value) {
    if (parameter == "tier") {
        base.tier = tier_from_string(value);
    } else if (parameter == "strategy") {
        base.strategy = strategy_from_string(value);
        if (base.strategy == StrategyName::Custom && base.custom_layout.partitions.empty()) {
            throw SchemaError("strategy", "Custom requires a custom_layout in the base scenario");
        }
    } else if (parameter == "seed") {
        try {
            base.seed = std::stoull(value);
        } catch (const std::exception&) {
            throw SchemaError("seed", "not an unsigned integer: '" + value + "'");
        }
    } else if (parameter == "b0_mbps") {
        try {
            base.confidence.b0_mbps = std::stod(value);
        } catch (const std::exception&) {
            throw SchemaError("b0_mbps", "not a number: '" + value + "'");
        }
    } else if (parameter == "per_mbps_mib") {
        try {
            base.buffer.per_mbps_mib = std::stod(value);
        } catch (const std::exception&) {
            throw SchemaError("per_mbps_mib", "not a number: '" + value + "'");
        }
    } else {
        throw UnknownParameter("unknown sweep parameter '" + parameter + "'");
    }
    return base;
}

std::vector<SweepRow> sweep(const Scenario& base, const std::string& parameter,
                            const std::vector<std::string>& values) {
    std::vector<Scenario> scenarios;
    scenarios.reserve(values.size());
    for (const auto& v : values) {
        scenarios.push_back(apply_parameter(base, parameter, v));
    }

    std::vector<std::future<RunSummary>> futures;
    futures.reserve(scenarios.size());
    for (const auto& sc : scenarios) {
        futures.push_back(std::async(std::launch::async,
                                     [sc]() { return run_scenario(sc).summary; }));
    }

    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        rows.push_back(SweepRow{values[i], futures[i].get()});
    }
    return rows;
}

std::vector<StrategyRow> compare_strategies(const Scenario& base) {
    const std::vector<StrategyName> strategies = {StrategyName::Proposed, StrategyName::StrategyA,
                                                  StrategyName::StrategyB,
                                                  StrategyName::SharedNoIsolation};
    std::vector<std::future<RunSummary>> futures;
    futures.reserve(strategies.size());
    for (const auto strat : strategies) {
        Scenario sc = base;
        sc.strategy = strat;
        sc.custom_layout = PartitionLayout{};
        futures.push_back(std::async(std::launch::async,
                                     [sc]() { return run_scenario(sc).summary; }));
    }

    std::vector<StrategyRow> rows;
    rows.reserve(strategies.size());
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        rows.push_back(StrategyRow{strategies[i], futures[i].get()});
    }
    return rows;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    return out;
}

std::string fmt(double v, int precision = 6) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(precision);
    os << v;
    return os.str();
}

} // namespace

void write_trace_jsonl(const RunResult& run, const std::string& path) {
    auto out = open_out(path);
    for (const auto& line : run.trace_lines) {
        out << line << '\n';
    }
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

void write_loops_csv(const RunResult& run, const std::string& path) {
    auto out = open_out(path);
    out << "loop,subtask,t_capture_us,t_uplink_us,t_infer_us,t_reason_us,t_downlink_us,total_us,confidence\n";
    for (const auto& lt : run.loops) {
        out << lt.loop << ',' << to_string(lt.subtask_at_start) << ',' << lt.t_capture_us << ','
            << lt.t_uplink_us << ',' << lt.t_infer_us << ',' << lt.t_reason_us << ','
            << lt.t_downlink_us << ',' << lt.total_us << ',' << fmt(lt.confidence) << '\n';
    }
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

std::string summary_csv_header() {
    return "outcome,loops,mean_total_ms,p95_total_ms,mean_capture_ms,mean_uplink_ms,mean_infer_ms,"
           "mean_reason_ms,mean_downlink_ms,loss_rate,deadline_miss_rate,oom_events,stream_mbps,"
           "slot_latency_stddev_us,slots,missed_slots,dropped_uplinks,dropped_downlinks,end_time_us,"
           "trace_digest";
}

std::string summary_csv_row(const RunSummary& s) {
    std::ostringstream os;
    os << to_string(s.outcome) << ',' << s.loops << ',' << fmt(s.mean_total_ms, 3) << ','
       << fmt(s.p95_total_ms, 3) << ',' << fmt(s.mean_capture_ms, 3) << ',' << fmt(s.mean_uplink_ms, 3)
       << ',' << fmt(s.mean_infer_ms, 3) << ',' << fmt(s.mean_reason_ms, 3) << ','
       << fmt(s.mean_downlink_ms, 3) << ',' << fmt(s.loss_rate) << ',' << fmt(s.deadline_miss_rate)
       << ',' << s.oom_events << ',' << fmt(s.stream_mbps, 3) << ',' << fmt(s.slot_latency_stddev_us, 3)
       << ',' << s.slots << ',' << s.missed_slots << ',' << s.dropped_uplinks << ','
       << s.dropped_downlinks << ',' << s.end_time_us << ',' << s.trace_digest;
    return os.str();
}

void write_summary_csv(const RunSummary& summary, const std::string& path) {
    auto out = open_out(path);
    out << summary_csv_header() << '\n' << summary_csv_row(summary) << '\n';
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

void write_kpis_csv(const RunResult& run, const std::string& path) {
    auto out = open_out(path);
    out << "t_us,throughput_mbps,loss_rate,deadline_miss_rate,buffer_occupancy_mib,avg_slot_latency_us\n";
    for (const auto& k : run.kpis) {
        out << k.window_end_us << ',' << fmt(k.throughput_mbps, 3) << ',' << fmt(k.loss_rate) << ','
            << fmt(k.deadline_miss_rate) << ',' << fmt(k.buffer_occupancy_mib, 1) << ','
            << fmt(k.avg_slot_latency_us, 3) << '\n';
    }
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

std::string sweep_csv(const std::string& parameter, const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << parameter << ',' << summary_csv_header() << '\n';
    for (const auto& row : rows) {
        os << row.value << ',' << summary_csv_row(row.summary) << '\n';
    }
    return os.str();
}

std::string compare_csv(const std::vector<StrategyRow>& rows) {
    std::ostringstream os;
    os << "strategy," << summary_csv_header() << '\n';
    for (const auto& row : rows) {
        os << to_string(row.strategy) << ',' << summary_csv_row(row.summary) << '\n';
    }
    return os.str();
}

} // namespace sc3sim
