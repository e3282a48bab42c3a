#include "sc3sim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace sc3sim {

namespace {

// Strict field access: every key read is marked consumed and done() rejects
// anything left over, so typos never silently fall back to defaults.
class Reader {
public:
    Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw SchemaError(path_.empty() ? "$" : path_, "expected an object");
        }
    }

    bool has(const char* key) const { return j_.contains(key); }

    double num(const char* key, double def) {
        const Json* v = consume(key);
        if (v == nullptr) {
            return def;
        }
        if (!v->is_number()) {
            throw SchemaError(qualify(key), "expected a number");
        }
        return v->get<double>();
    }

    std::uint64_t uint(const char* key, std::uint64_t def) {
        const Json* v = consume(key);
        if (v == nullptr) {
            return def;
        }
        if (v->is_number_unsigned()) {
            return v->get<std::uint64_t>();
        }
        if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
            return static_cast<std::uint64_t>(v->get<std::int64_t>());
        }
        throw SchemaError(qualify(key), "expected a non-negative integer");
    }

    int integer(const char* key, int def) {
        const Json* v = consume(key);
        if (v == nullptr) {
            return def;
        }
        if (!v->is_number_integer()) {
            throw SchemaError(qualify(key), "expected an integer");
        }
        return v->get<int>();
    }

    bool boolean(const char* key, bool def) {
        const Json* v = consume(key);
        if (v == nullptr) {
            return def;
        }
        if (!v->is_boolean()) {
            throw SchemaError(qualify(key), "expected a boolean");
        }
        return v->get<bool>();
    }

    std::string str(const char* key, const std::string& def) {
        const Json* v = consume(key);
        if (v == nullptr) {
            return def;
        }
        if (!v->is_string()) {
            throw SchemaError(qualify(key), "expected a string");
        }
        return v->get<std::string>();
    }

    const Json* child(const char* key) { return consume(key); }

    std::string qualify(const char* key) const {
        return path_.empty() ? std::string(key) : path_ + "." + key;
    }

    void done() {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (consumed_.count(it.key()) == 0) {
                throw SchemaError(qualify(it.key().c_str()), "unknown field");
            }
        }
    }

private:
    const Json* consume(const char* key) {
        auto it = j_.find(key);
        if (it == j_.end()) {
            return nullptr;
        }
        consumed_.insert(key);
        return &*it;
    }

    const Json& j_;
    std::string path_;
    std::set<std::string> consumed_;
};

Vec3 vec3_field(const Json* v, const std::string& path, Vec3 def) {
    if (v == nullptr) {
        return def;
    }
    if (!v->is_array() || v->size() != 3 || !(*v)[0].is_number() || !(*v)[1].is_number() ||
        !(*v)[2].is_number()) {
        throw SchemaError(path, "expected an array of three numbers");
    }
    return Vec3{(*v)[0].get<double>(), (*v)[1].get<double>(), (*v)[2].get<double>()};
}

TierParams tier_params(const Json* v, const std::string& path, TierParams def) {
    if (v == nullptr) {
        return def;
    }
    Reader r(*v, path);
    TierParams p;
    p.still_frame_kb = r.num("still_frame_kb", def.still_frame_kb);
    p.stream_mbps = r.num("stream_mbps", def.stream_mbps);
    p.inf_base_ms = r.num("inf_base_ms", def.inf_base_ms);
    r.done();
    return p;
}

WorkloadOwner owner_from_string(const std::string& s, const std::string& path) {
    if (s == "comm") return WorkloadOwner::Comm;
    if (s == "inference") return WorkloadOwner::Inference;
    throw SchemaError(path, "owner must be 'comm' or 'inference'");
}

PartitionLayout custom_layout_from_json(const Json& v, IsolationMode mode) {
    if (!v.is_array() || v.empty()) {
        throw SchemaError("custom_layout", "expected a non-empty array of partitions");
    }
    PartitionLayout layout;
    layout.isolation_mode = mode;
    std::size_t idx = 0;
    for (const auto& entry : v) {
        const std::string path = "custom_layout[" + std::to_string(idx) + "]";
        Reader r(entry, path);
        Partition p;
        p.owner = owner_from_string(r.str("owner", ""), path + ".owner");
        p.id = r.str("id", "p-" + std::string(to_string(p.owner)));
        p.compute_fraction = r.num("compute_fraction", 0.0);
        p.memory_capacity_mib = r.uint("memory_capacity_mib", 0);
        r.done();
        layout.partitions.push_back(std::move(p));
        ++idx;
    }
    return layout;
}

void check_positive(double v, const char* field) {
    if (!(v > 0.0)) {
        throw SchemaError(field, "must be positive");
    }
}

void validate_scenario(const Scenario& s) {
    if (s.instruction.empty()) {
        throw SchemaError("instruction", "must be non-empty");
    }
    if (s.accelerator.max_instance_memory_mib > s.accelerator.total_memory_mib) {
        throw SchemaError("accelerator.max_instance_memory_mib", "exceeds total_memory_mib");
    }
    if (s.accelerator.total_memory_mib == 0 || s.accelerator.max_instance_memory_mib == 0) {
        throw SchemaError("accelerator", "memory sizes must be positive");
    }

    if (!(s.slot.nominal_proc_us < static_cast<double>(s.slot.slot_us))) {
        throw SchemaError("slot.nominal_proc_us", "must stay below slot_us at the reference fraction");
    }
    if (s.slot.harq_max_attempts < 1 || s.slot.harq_rtt_slots < 0) {
        throw SchemaError("slot", "harq configuration out of range");
    }

    check_positive(s.buffer.static_mib, "buffer.static_mib");
    check_positive(s.buffer.per_mbps_mib, "buffer.per_mbps_mib");
    check_positive(s.buffer.burst_mean_on_ms, "buffer.burst_mean_on_ms");
    check_positive(s.buffer.burst_mean_off_ms, "buffer.burst_mean_off_ms");
    if (s.buffer.burst_factor < 1.0) {
        throw SchemaError("buffer.burst_factor", "must be >= 1");
    }

    const double max_stream = std::max({s.tiers.low.stream_mbps, s.tiers.mid.stream_mbps,
                                        s.tiers.high.stream_mbps});
    if (!(s.link.link_capacity_mbps > max_stream)) {
        throw SchemaError("link.link_capacity_mbps", "must exceed the largest tier stream bitrate");
    }

    const auto strictly_increasing = [](double a, double b, double c) { return a < b && b < c; };
    if (!strictly_increasing(s.tiers.low.still_frame_kb, s.tiers.mid.still_frame_kb, s.tiers.high.still_frame_kb) ||
        !strictly_increasing(s.tiers.low.stream_mbps, s.tiers.mid.stream_mbps, s.tiers.high.stream_mbps) ||
        !strictly_increasing(s.tiers.low.inf_base_ms, s.tiers.mid.inf_base_ms, s.tiers.high.inf_base_ms)) {
        throw SchemaError("tiers", "tier attributes must strictly increase Low -> High");
    }

    const auto& cm = s.confidence;
    if (!(0.0 <= cm.c_min && cm.c_min < cm.detect_threshold && cm.detect_threshold < cm.c_max &&
          cm.c_max <= 1.0)) {
        throw SchemaError("confidence", "requires 0 <= c_min < detect_threshold < c_max <= 1");
    }
    check_positive(cm.b0_mbps, "confidence.b0_mbps");
    check_positive(cm.d0_m, "confidence.d0_m");

    const auto inside = [](double v, double extent) { return v >= 0.0 && v <= extent; };
    if (!inside(s.world.target_position.x, s.world.arena_extent.x) ||
        !inside(s.world.target_position.y, s.world.arena_extent.y) ||
        !inside(s.world.target_position.z, s.world.arena_extent.z)) {
        throw SchemaError("world.target_position", "target must lie inside the arena");
    }
    check_positive(static_cast<double>(s.world.frame_period_us), "world.frame_period_us");
    check_positive(s.world.v_max, "world.v_max");
    check_positive(s.world.yaw_rate_max, "world.yaw_rate_max");

    try {
        parse_instruction(s.instruction, s.vocabulary);
    } catch (const ParseError& e) {
        throw SchemaError("instruction", e.what());
    }

    const auto layout = s.effective_layout();
    const auto violations = validate_layout(s.accelerator, layout);
    if (!violations.empty()) {
        std::string detail = "layout invalid:";
        for (const auto& v : violations) {
            detail += " [" + std::string(to_string(v.kind)) + "] " + v.detail + ";";
        }
        throw LayoutInvalid(detail);
    }
}

} // namespace

PartitionLayout Scenario::effective_layout() const {
    if (strategy == StrategyName::Custom) {
        return custom_layout;
    }
    return plan_layout(accelerator, strategy);
}

Scenario scenario_from_json(const Json& j) {
    Reader top(j, "");
    Scenario s;

    if (!top.has("seed")) {
        throw SchemaError("seed", "required field is missing");
    }
    s.seed = top.uint("seed", 0);

    s.strategy = strategy_from_string(top.str("strategy", "Proposed"));
    s.tier = tier_from_string(top.str("tier", "High"));
    s.instruction = top.str("instruction", s.instruction);
    s.t_max_us = top.uint("t_max_us", s.t_max_us);
    s.reasoning_us = top.uint("reasoning_us", s.reasoning_us);
    s.kpi_window_us = top.uint("kpi_window_us", s.kpi_window_us);
    s.interference_j_mean = top.num("interference_j_mean", s.interference_j_mean);
    s.link_failure_loss = top.num("link_failure_loss", s.link_failure_loss);
    s.link_failure_window_us = top.uint("link_failure_window_us", s.link_failure_window_us);
    s.mission_enabled = top.boolean("mission_enabled", s.mission_enabled);

    if (const Json* v = top.child("vocabulary")) {
        if (!v->is_array() || v->empty()) {
            throw SchemaError("vocabulary", "expected a non-empty array of strings");
        }
        s.vocabulary.clear();
        for (const auto& e : *v) {
            if (!e.is_string()) {
                throw SchemaError("vocabulary", "expected a non-empty array of strings");
            }
            s.vocabulary.push_back(e.get<std::string>());
        }
    }

    if (const Json* v = top.child("accelerator")) {
        Reader r(*v, "accelerator");
        s.accelerator.total_memory_mib = r.uint("total_memory_mib", s.accelerator.total_memory_mib);
        s.accelerator.max_instance_memory_mib =
            r.uint("max_instance_memory_mib", s.accelerator.max_instance_memory_mib);
        s.accelerator.total_compute = r.num("total_compute", s.accelerator.total_compute);
        r.done();
    }

    IsolationMode custom_mode = IsolationMode::Isolated;
    if (top.has("isolation_mode")) {
        const std::string mode = top.str("isolation_mode", "Isolated");
        if (s.strategy != StrategyName::Custom) {
            throw SchemaError("isolation_mode", "only valid with strategy Custom");
        }
        if (mode == "Isolated") {
            custom_mode = IsolationMode::Isolated;
        } else if (mode == "Shared") {
            custom_mode = IsolationMode::Shared;
        } else {
            throw SchemaError("isolation_mode", "must be 'Isolated' or 'Shared'");
        }
    }

    if (const Json* v = top.child("custom_layout")) {
        if (s.strategy != StrategyName::Custom) {
            throw SchemaError("custom_layout", "only valid with strategy Custom");
        }
        s.custom_layout = custom_layout_from_json(*v, custom_mode);
    } else if (s.strategy == StrategyName::Custom) {
        throw SchemaError("custom_layout", "required when strategy is Custom");
    }

    if (const Json* v = top.child("slot")) {
        Reader r(*v, "slot");
        s.slot.slot_us = r.uint("slot_us", s.slot.slot_us);
        s.slot.nominal_proc_us = r.num("nominal_proc_us", s.slot.nominal_proc_us);
        s.slot.harq_max_attempts = r.integer("harq_max_attempts", s.slot.harq_max_attempts);
        s.slot.harq_rtt_slots = r.integer("harq_rtt_slots", s.slot.harq_rtt_slots);
        s.slot.reference_compute_fraction =
            r.num("reference_compute_fraction", s.slot.reference_compute_fraction);
        r.done();
    }

    if (const Json* v = top.child("buffer")) {
        Reader r(*v, "buffer");
        s.buffer.static_mib = r.num("static_mib", s.buffer.static_mib);
        s.buffer.per_mbps_mib = r.num("per_mbps_mib", s.buffer.per_mbps_mib);
        s.buffer.burst_factor = r.num("burst_factor", s.buffer.burst_factor);
        s.buffer.burst_mean_on_ms = r.num("burst_mean_on_ms", s.buffer.burst_mean_on_ms);
        s.buffer.burst_mean_off_ms = r.num("burst_mean_off_ms", s.buffer.burst_mean_off_ms);
        r.done();
    }

    if (const Json* v = top.child("link")) {
        Reader r(*v, "link");
        s.link.link_capacity_mbps = r.num("link_capacity_mbps", s.link.link_capacity_mbps);
        s.link.propagation_us = r.uint("propagation_us", s.link.propagation_us);
        s.link.downlink_cmd_bytes = r.uint("downlink_cmd_bytes", s.link.downlink_cmd_bytes);
        s.link.scheduling_delay_us = r.uint("scheduling_delay_us", s.link.scheduling_delay_us);
        r.done();
    }

    if (const Json* v = top.child("model")) {
        Reader r(*v, "model");
        s.model.weights_mib = r.uint("weights_mib", s.model.weights_mib);
        s.model.activation_low_mib = r.uint("activation_low_mib", s.model.activation_low_mib);
        s.model.activation_mid_mib = r.uint("activation_mid_mib", s.model.activation_mid_mib);
        s.model.activation_high_mib = r.uint("activation_high_mib", s.model.activation_high_mib);
        s.model.reference_compute_fraction =
            r.num("reference_compute_fraction", s.model.reference_compute_fraction);
        r.done();
    }

    if (const Json* v = top.child("tiers")) {
        Reader r(*v, "tiers");
        s.tiers.low = tier_params(r.child("low"), "tiers.low", s.tiers.low);
        s.tiers.mid = tier_params(r.child("mid"), "tiers.mid", s.tiers.mid);
        s.tiers.high = tier_params(r.child("high"), "tiers.high", s.tiers.high);
        r.done();
    }

    if (const Json* v = top.child("confidence")) {
        Reader r(*v, "confidence");
        s.confidence.c_min = r.num("c_min", s.confidence.c_min);
        s.confidence.c_max = r.num("c_max", s.confidence.c_max);
        s.confidence.b0_mbps = r.num("b0_mbps", s.confidence.b0_mbps);
        s.confidence.detect_threshold = r.num("detect_threshold", s.confidence.detect_threshold);
        s.confidence.d0_m = r.num("d0_m", s.confidence.d0_m);
        s.confidence.max_detect_m = r.num("max_detect_m", s.confidence.max_detect_m);
        s.confidence.fov_deg = r.num("fov_deg", s.confidence.fov_deg);
        r.done();
    }

    if (const Json* v = top.child("world")) {
        Reader r(*v, "world");
        s.world.arena_extent = vec3_field(r.child("arena"), "world.arena", s.world.arena_extent);
        s.world.target_label = r.str("target_label", s.world.target_label);
        s.world.target_position =
            vec3_field(r.child("target_position"), "world.target_position", s.world.target_position);
        s.world.spawn_position =
            vec3_field(r.child("spawn_position"), "world.spawn_position", s.world.spawn_position);
        s.world.spawn_yaw = r.num("spawn_yaw", s.world.spawn_yaw);
        s.world.frame_period_us = r.uint("frame_period_us", s.world.frame_period_us);
        s.world.v_max = r.num("v_max", s.world.v_max);
        s.world.yaw_rate_max = r.num("yaw_rate_max", s.world.yaw_rate_max);
        s.world.success_distance_m = r.num("success_distance_m", s.world.success_distance_m);
        r.done();
    }

    if (const Json* v = top.child("policy")) {
        Reader r(*v, "policy");
        s.policy.search_yaw_rate = r.num("search_yaw_rate", s.policy.search_yaw_rate);
        s.policy.approach_stop_m = r.num("approach_stop_m", s.policy.approach_stop_m);
        r.done();
    }

    if (const Json* v = top.child("tier_schedule")) {
        Reader r(*v, "tier_schedule");
        if (r.has("search")) {
            s.tier_schedule[SubTaskKind::Search] = tier_from_string(r.str("search", "High"));
        }
        if (r.has("approach")) {
            s.tier_schedule[SubTaskKind::Approach] = tier_from_string(r.str("approach", "High"));
        }
        r.done();
    }

    top.done();

    // Policy thresholds mirror the confidence and platform limits.
    s.policy.detect_threshold = s.confidence.detect_threshold;
    s.policy.v_max = s.world.v_max;
    s.policy.yaw_rate_max = s.world.yaw_rate_max;
    s.policy.approach_stop_m = std::min(s.policy.approach_stop_m, s.world.success_distance_m);

    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open scenario file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed reading scenario file '" + path + "'");
    }

    Json j;
    try {
        j = Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("$", std::string("not valid JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

} // namespace sc3sim
