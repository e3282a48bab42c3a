#pragma once

#include <cmath>
#include <string>

#include "sc3sim/brain.hpp"
#include "sc3sim/event.hpp"
#include "sc3sim/inference.hpp"

namespace sc3sim {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct DroneState {
    Vec3 position;
    double yaw = 0.0; // rad, wrapped to (-pi, pi]
    Vec3 velocity;
    double yaw_rate = 0.0;
};

struct VelocityCommand {
    double vx = 0.0;
    double vy = 0.0;
    double vz = 0.0;
    double yaw_rate = 0.0;
};

// Indoor arena with a single static target. Spawn faces 90 degrees away from
// the target so every run exercises the Search phase.
struct WorldModel {
    Vec3 arena_extent{20.0, 20.0, 5.0}; // arena spans [0, extent] per axis
    std::string target_label = "chair";
    Vec3 target_position{14.0, 10.0, 1.0};
    Vec3 spawn_position{6.0, 10.0, 1.0};
    double spawn_yaw = 1.5707963267948966; // pi/2
    std::uint64_t frame_period_us = 33333;
    double v_max = 1.5;           // m/s
    double yaw_rate_max = 0.8;    // rad/s
    double success_distance_m = 1.0;
};

struct Frame {
    SimTime capture_us = 0;
    ResolutionTier tier = ResolutionTier::High;
    double distance_m = 0.0;
    double bearing_rad = 0.0; // target azimuth relative to the camera axis
    double yaw_rad = 0.0;     // drone yaw at capture
    bool in_fov = false;
};

struct Detection {
    bool detected = false;
    double confidence = 0.0;
};

enum class MissionStatus { InProgress, Success, Timeout };

double wrap_angle(double rad); // to (-pi, pi]

// Explicit first-order integration; command clamped to platform limits,
// position clamped to the arena.
DroneState step_kinematics(const DroneState& s, const VelocityCommand& cmd, std::uint64_t dt_us,
                           const WorldModel& w);

Frame capture_frame(const WorldModel& w, const DroneState& s, ResolutionTier tier, SimTime t);

// Detection gates: target in the field of view, inside the detection range,
// and the bitrate-driven semantic confidence above threshold. The reported
// confidence is the range-attenuated effective value.
Detection detection_check(const Frame& f, const ConfidenceModel& cm, const TierTable& tiers);

MissionStatus mission_status(const WorldModel& w, const DroneState& s, const MissionPlan& plan,
                             SimTime t, SimTime t_max);

// Continuous-motion wrapper: integrates the active command between events.
class DroneWorld {
public:
    explicit DroneWorld(WorldModel model);

    void advance_to(SimTime t);
    void apply_command(const VelocityCommand& cmd, SimTime t);
    Frame capture(ResolutionTier tier, SimTime t);

    const DroneState& state() const { return state_; }
    const WorldModel& model() const { return model_; }
    double distance_to_target() const;

private:
    WorldModel model_;
    DroneState state_;
    SimTime last_update_us_ = 0;
};

} // namespace sc3sim
