#include "sc3sim/brain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace sc3sim {

std::string_view to_string(SubTaskKind k) {
    switch (k) {
    case SubTaskKind::Search: return "Search";
    case SubTaskKind::Approach: return "Approach";
    case SubTaskKind::Complete: return "Complete";
    }
    return "Unknown";
}

void MissionPlan::advance() {
    if (cursor + 1 < tasks.size()) {
        ++cursor;
    }
}

std::string_view to_string(MemoryKind k) {
    switch (k) {
    case MemoryKind::ActionExecuted: return "ActionExecuted";
    case MemoryKind::PerceptionOutcome: return "PerceptionOutcome";
    case MemoryKind::KpiSample: return "KpiSample";
    }
    return "Unknown";
}

namespace {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char raw : text) {
        const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) {
                tokens.push_back(current);
                current.clear();
            }
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) {
        tokens.push_back(current);
    }
    for (auto& tok : tokens) {
        while (!tok.empty() && (tok.back() == '.' || tok.back() == ',' || tok.back() == '!' || tok.back() == '?')) {
            tok.pop_back();
        }
    }
    tokens.erase(std::remove_if(tokens.begin(), tokens.end(),
                                [](const std::string& t) { return t.empty(); }),
                 tokens.end());
    return tokens;
}

bool is_article(const std::string& tok) {
    return tok == "a" || tok == "an" || tok == "the";
}

// Matches one of the verb phrases at position i; phrases are token sequences.
bool match_phrase(const std::vector<std::string>& tokens, std::size_t& i,
                  const std::vector<std::vector<std::string>>& phrases) {
    for (const auto& phrase : phrases) {
        if (i + phrase.size() > tokens.size()) {
            continue;
        }
        bool all = true;
        for (std::size_t k = 0; k < phrase.size(); ++k) {
            if (tokens[i + k] != phrase[k]) {
                all = false;
                break;
            }
        }
        if (all) {
            i += phrase.size();
            return true;
        }
    }
    return false;
}

const std::vector<std::vector<std::string>> kFindVerbs = {{"search", "for"}, {"find"}, {"locate"}};
const std::vector<std::vector<std::string>> kApproachVerbs = {{"go", "to"}, {"fly", "to"}, {"approach"}};
const std::vector<std::string> kCondition = {"once", "you", "detect", "it"};

bool in_vocabulary(const std::string& word, const std::vector<std::string>& vocabulary) {
    return std::find(vocabulary.begin(), vocabulary.end(), word) != vocabulary.end();
}

} // namespace

MissionPlan parse_instruction(const std::string& text, const std::vector<std::string>& vocabulary) {
    const auto tokens = tokenize(text);
    if (tokens.empty()) {
        throw ParseError(ParseError::Code::Malformed, "empty instruction");
    }

    std::size_t i = 0;
    if (!match_phrase(tokens, i, kFindVerbs)) {
        throw ParseError(ParseError::Code::UnknownVerb, "expected a find verb, got '" + tokens[i] + "'");
    }

    if (i < tokens.size() && is_article(tokens[i])) {
        ++i;
    }
    if (i >= tokens.size()) {
        throw ParseError(ParseError::Code::Malformed, "missing target object");
    }
    const std::string object = tokens[i];
    if (!in_vocabulary(object, vocabulary)) {
        throw ParseError(ParseError::Code::UnknownObject, "unknown object '" + object + "'");
    }
    ++i;

    if (i >= tokens.size() || tokens[i] != "and") {
        throw ParseError(ParseError::Code::Malformed, "expected 'and' between the find and approach clauses");
    }
    ++i;

    if (i >= tokens.size()) {
        throw ParseError(ParseError::Code::Malformed, "missing approach clause");
    }
    if (!match_phrase(tokens, i, kApproachVerbs)) {
        throw ParseError(ParseError::Code::UnknownVerb, "expected an approach verb, got '" + tokens[i] + "'");
    }

    if (i >= tokens.size()) {
        throw ParseError(ParseError::Code::Malformed, "missing object reference in approach clause");
    }
    if (tokens[i] == "it") {
        ++i;
    } else {
        if (is_article(tokens[i])) {
            ++i;
        }
        if (i >= tokens.size()) {
            throw ParseError(ParseError::Code::Malformed, "missing object reference in approach clause");
        }
        const std::string ref = tokens[i];
        if (!in_vocabulary(ref, vocabulary)) {
            throw ParseError(ParseError::Code::UnknownObject, "unknown object '" + ref + "'");
        }
        if (ref != object) {
            throw ParseError(ParseError::Code::Malformed,
                             "approach object '" + ref + "' does not match '" + object + "'");
        }
        ++i;
    }

    if (i < tokens.size()) {
        std::size_t j = i;
        bool matched = j + kCondition.size() <= tokens.size();
        if (matched) {
            for (std::size_t k = 0; k < kCondition.size(); ++k) {
                if (tokens[j + k] != kCondition[k]) {
                    matched = false;
                    break;
                }
            }
        }
        if (!matched) {
            throw ParseError(ParseError::Code::Malformed, "unexpected trailing tokens after approach clause");
        }
        i += kCondition.size();
    }
    if (i != tokens.size()) {
        throw ParseError(ParseError::Code::Malformed, "unexpected trailing tokens");
    }

    MissionPlan plan;
    plan.tasks = {SubTask{SubTaskKind::Search, object}, SubTask{SubTaskKind::Approach, object},
                  SubTask{SubTaskKind::Complete, ""}};
    return plan;
}

std::string render_instruction(const MissionPlan& plan) {
    if (plan.tasks.size() != 3 || plan.tasks[0].kind != SubTaskKind::Search ||
        plan.tasks[1].kind != SubTaskKind::Approach || plan.tasks[2].kind != SubTaskKind::Complete ||
        plan.tasks[0].object != plan.tasks[1].object || plan.tasks[0].object.empty()) {
        throw SimError("plan is not expressible in the instruction grammar");
    }
    return "Find a " + plan.tasks[0].object + " and approach it once you detect it.";
}

void ContextualMemory::append(MemoryRecord rec) {
    records_.push_back(std::move(rec));
    ++total_appended_;
    while (records_.size() > capacity_) {
        records_.pop_front();
    }
}

std::vector<MemoryRecord> ContextualMemory::query(std::optional<MemoryKind> kind, std::size_t limit) const {
    std::vector<MemoryRecord> out;
    for (auto it = records_.rbegin(); it != records_.rend() && out.size() < limit; ++it) {
        if (!kind || it->kind == *kind) {
            out.push_back(*it);
        }
    }
    return out;
}

const MemoryRecord* ContextualMemory::latest(MemoryKind kind) const {
    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
        if (it->kind == kind) {
            return &*it;
        }
    }
    return nullptr;
}

void Toolbox::register_tool(ToolDescriptor descriptor, ToolHandler handler) {
    const std::string name = descriptor.name;
    tools_[name] = Entry{std::move(descriptor), std::move(handler)};
}

std::vector<std::string> Toolbox::tool_names() const {
    std::vector<std::string> names;
    names.reserve(tools_.size());
    for (const auto& [name, entry] : tools_) {
        (void)entry;
        names.push_back(name);
    }
    return names;
}

ToolResult Toolbox::dispatch(const ToolCall& call, ContextualMemory& memory) {
    ToolResult result;
    auto it = tools_.find(call.name);
    if (it == tools_.end()) {
        result.status = "unknown_tool";
        result.payload = Json{{"error", "unknown tool '" + call.name + "'"}};
    } else {
        result = it->second.handler(call.arguments);
    }

    MemoryRecord rec;
    rec.time_us = call.issued_us;
    rec.kind = MemoryKind::ActionExecuted;
    rec.payload = Json{{"tool", call.name},
                       {"intent", call.intent},
                       {"arguments", call.arguments},
                       {"status", result.status}};
    memory.append(std::move(rec));
    return result;
}

namespace {

Json velocity_arguments(double vx, double vy, double vz, double yaw_rate) {
    return Json{{"vx", vx}, {"vy", vy}, {"vz", vz}, {"yaw_rate", yaw_rate}};
}

ToolCall move_toward_call(const Json& perception, const PolicyConfig& cfg, SimTime now) {
    const double distance = perception.at("distance_m").get<double>();
    const double bearing = perception.at("bearing_rad").get<double>();
    const double yaw = perception.at("yaw_rad").get<double>();

    // Proportional speed capped at the platform limit; heading is the
    // capture-time line of sight, so range decreases monotonically.
    const double speed = std::min(cfg.v_max, distance);
    const double heading = yaw + bearing;
    const double yaw_rate = std::clamp(bearing, -cfg.yaw_rate_max, cfg.yaw_rate_max);

    ToolCall call;
    call.name = "send_velocity_command";
    call.intent = "move_toward";
    call.issued_us = now;
    call.arguments = velocity_arguments(speed * std::cos(heading), speed * std::sin(heading), 0.0, yaw_rate);
    return call;
}

} // namespace

ToolCall next_action(MissionPlan& plan, const ContextualMemory& memory, const KpiSnapshot& kpis,
                     const PolicyConfig& cfg, SimTime now) {
    (void)kpis; // recorded in memory; no KPI-driven re-planning rule
    if (plan.tasks.empty()) {
        throw NoPlanError("no plan");
    }
    if (plan.finished()) {
        throw NoPlanError("plan already finished");
    }

    const MemoryRecord* perception = memory.latest(MemoryKind::PerceptionOutcome);

    switch (plan.current().kind) {
    case SubTaskKind::Search: {
        bool detected = false;
        if (perception != nullptr) {
            detected = perception->payload.value(
                "detected", perception->payload.value("confidence", 0.0) >= cfg.detect_threshold);
        }
        if (!detected) {
            ToolCall call;
            call.name = "send_velocity_command";
            call.intent = "set_yaw_rate";
            call.issued_us = now;
            call.arguments = velocity_arguments(0.0, 0.0, 0.0, cfg.search_yaw_rate);
            return call;
        }
        plan.advance(); // Search -> Approach
        return move_toward_call(perception->payload, cfg, now);
    }
    case SubTaskKind::Approach: {
        if (perception == nullptr) {
            throw SimError("approach phase without any perception outcome");
        }
        const double distance = perception->payload.at("distance_m").get<double>();
        if (distance > cfg.approach_stop_m) {
            return move_toward_call(perception->payload, cfg, now);
        }
        plan.advance(); // Approach -> Complete
        ToolCall call;
        call.name = "send_velocity_command";
        call.intent = "hover";
        call.issued_us = now;
        call.arguments = velocity_arguments(0.0, 0.0, 0.0, 0.0);
        return call;
    }
    case SubTaskKind::Complete:
        break;
    }
    throw NoPlanError("plan already finished");
}

} // namespace sc3sim
