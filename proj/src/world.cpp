#include "sc3sim/world.hpp"

#include <algorithm>

namespace sc3sim {

double wrap_angle(double rad) {
    constexpr double two_pi = 2.0 * M_PI;
    double a = std::fmod(rad, two_pi);
    if (a > M_PI) {
        a -= two_pi;
    } else if (a <= -M_PI) {
        a += two_pi;
    }
    return a;
}

namespace {

double clamp_axis(double value, double extent) {
    return std::clamp(value, 0.0, extent);
}

VelocityCommand clamp_command(const VelocityCommand& cmd, const WorldModel& w) {
    VelocityCommand out = cmd;
    const double speed = std::sqrt(cmd.vx * cmd.vx + cmd.vy * cmd.vy + cmd.vz * cmd.vz);
    if (speed > w.v_max && speed > 0.0) {
        const double scale = w.v_max / speed;
        out.vx *= scale;
        out.vy *= scale;
        out.vz *= scale;
    }
    out.yaw_rate = std::clamp(cmd.yaw_rate, -w.yaw_rate_max, w.yaw_rate_max);
    return out;
}

} // namespace

DroneState step_kinematics(const DroneState& s, const VelocityCommand& cmd, std::uint64_t dt_us,
                           const WorldModel& w) {
    const VelocityCommand c = clamp_command(cmd, w);
    const double dt = static_cast<double>(dt_us) * 1e-6;

    DroneState out = s;
    out.velocity = Vec3{c.vx, c.vy, c.vz};
    out.yaw_rate = c.yaw_rate;
    out.position.x = clamp_axis(s.position.x + c.vx * dt, w.arena_extent.x);
    out.position.y = clamp_axis(s.position.y + c.vy * dt, w.arena_extent.y);
    out.position.z = clamp_axis(s.position.z + c.vz * dt, w.arena_extent.z);
    out.yaw = wrap_angle(s.yaw + c.yaw_rate * dt);
    return out;
}

Frame capture_frame(const WorldModel& w, const DroneState& s, ResolutionTier tier, SimTime t) {
    Frame f;
    f.capture_us = t;
    f.tier = tier;
    f.yaw_rad = s.yaw;

    const double dx = w.target_position.x - s.position.x;
    const double dy = w.target_position.y - s.position.y;
    const double dz = w.target_position.z - s.position.z;
    f.distance_m = std::sqrt(dx * dx + dy * dy + dz * dz);
    f.bearing_rad = wrap_angle(std::atan2(dy, dx) - s.yaw);
    f.in_fov = std::abs(f.bearing_rad) <= (30.0 * M_PI / 180.0);
    return f;
}

Detection detection_check(const Frame& f, const ConfidenceModel& cm, const TierTable& tiers) {
    Detection d;
    d.confidence = confidence(tiers, f.tier, f.distance_m, cm);
    const double semantic = bitrate_confidence(tiers, f.tier, cm);
    d.detected = f.in_fov && f.distance_m <= cm.max_detect_m && semantic >= cm.detect_threshold;
    return d;
}

MissionStatus mission_status(const WorldModel& w, const DroneState& s, const MissionPlan& plan,
                             SimTime t, SimTime t_max) {
    const double dx = w.target_position.x - s.position.x;
    const double dy = w.target_position.y - s.position.y;
    const double dz = w.target_position.z - s.position.z;
    const double distance = std::sqrt(dx * dx + dy * dy + dz * dz);

    if (plan.finished() && distance <= w.success_distance_m) {
        return MissionStatus::Success;
    }
    if (t > t_max) {
        return MissionStatus::Timeout;
    }
    return MissionStatus::InProgress;
}

DroneWorld::DroneWorld(WorldModel model) : model_(std::move(model)) {
    state_.position = model_.spawn_position;
    state_.yaw = wrap_angle(model_.spawn_yaw);
}

void DroneWorld::advance_to(SimTime t) {
    if (t <= last_update_us_) {
        return;
    }
    const VelocityCommand active{state_.velocity.x, state_.velocity.y, state_.velocity.z, state_.yaw_rate};
    state_ = step_kinematics(state_, active, t - last_update_us_, model_);
    last_update_us_ = t;
}

void DroneWorld::apply_command(const VelocityCommand& cmd, SimTime t) {
    advance_to(t);
    state_ = step_kinematics(state_, cmd, 0, model_);
}

Frame DroneWorld::capture(ResolutionTier tier, SimTime t) {
    advance_to(t);
    return capture_frame(model_, state_, tier, t);
}

double DroneWorld::distance_to_target() const {
    const double dx = model_.target_position.x - state_.position.x;
    const double dy = model_.target_position.y - state_.position.y;
    const double dz = model_.target_position.z - state_.position.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

} // namespace sc3sim
