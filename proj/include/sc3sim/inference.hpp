#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "sc3sim/errors.hpp"
#include "sc3sim/event.hpp"
#include "sc3sim/partition.hpp"

namespace sc3sim {

enum class ResolutionTier { Low, Mid, High };

std::string_view to_string(ResolutionTier t);
ResolutionTier tier_from_string(std::string_view name); // throws SchemaError

// Per-tier calibration: frame size for the per-loop still transfer, stream
// bitrate for bandwidth accounting, inference base time at the 0.4 reference
// compute fraction. All attributes strictly increase Low -> High.
struct TierParams {
    double still_frame_kb = 0.0;
    double stream_mbps = 0.0;
    double inf_base_ms = 0.0;
};

struct TierTable {
    TierParams low{100.0, 0.9, 380.0};
    TierParams mid{400.0, 4.5, 480.0};
    TierParams high{900.0, 12.0, 550.0};

    const TierParams& at(ResolutionTier t) const;
    TierParams& at(ResolutionTier t);
};

// Multimodal model footprint: weights resident from container start, a
// tier-dependent activation slab per in-flight job.
struct ModelProfile {
    std::uint64_t weights_mib = 35840;
    std::uint64_t activation_low_mib = 512;
    std::uint64_t activation_mid_mib = 1024;
    std::uint64_t activation_high_mib = 2048;
    double reference_compute_fraction = 0.4;

    std::uint64_t activation_mib(ResolutionTier t) const;
};

struct ConfidenceModel {
    double c_min = 0.35;
    double c_max = 0.95;
    double b0_mbps = 3.0;
    double detect_threshold = 0.6;
    double d0_m = 5.0;
    double max_detect_m = 12.0;
    double fov_deg = 60.0;
};

// One frame's inference; the loop runs jobs strictly one at a time.
struct InferenceJob {
    std::uint64_t loop = 0;
    ResolutionTier tier = ResolutionTier::High;
    SimTime submit_us = 0;
    std::string partition_id;
    std::uint64_t activation_mib = 0;
};

std::uint64_t inference_memory_footprint(const ModelProfile& m, ResolutionTier tier);

// inf_base_ms scaled inverse-linearly with the compute fraction, in us.
std::uint64_t inference_duration_us(const TierTable& tiers, const ModelProfile& m,
                                    ResolutionTier tier, double compute_fraction);

// Saturating-exponential bitrate law attenuated beyond d0:
//   c(b) = c_min + (c_max - c_min)(1 - exp(-b / b0)),  effective = c(b) * min(1, d0 / distance).
double bitrate_confidence(const TierTable& tiers, ResolutionTier tier, const ConfidenceModel& cm);
double confidence(const TierTable& tiers, ResolutionTier tier, double distance_m, const ConfidenceModel& cm);

// Container lifecycle against the inference partition's ledger. Weights are
// allocated once at start; activations are paired allocate/release per job.
class InferenceContainer {
public:
    explicit InferenceContainer(ModelProfile profile) : profile_(profile) {}

    // Allocates the weights; returns false on Oom (ledger untouched).
    bool start(Partition& p);

    // Releases everything; safe to call when not resident.
    void shutdown(Partition& p);

    // Allocates the activation slab and returns the completion time.
    // Throws BusyError when a job is in flight, OomError when the activation
    // does not fit (ledger untouched in that case).
    SimTime submit(Partition& p, const TierTable& tiers, ResolutionTier tier, SimTime now,
                   std::uint64_t loop = 0);

    // Releases the in-flight activation.
    void complete(Partition& p);

    bool resident() const { return resident_; }
    bool busy() const { return job_.has_value(); }
    const std::optional<InferenceJob>& job() const { return job_; }
    const ModelProfile& profile() const { return profile_; }

private:
    ModelProfile profile_;
    bool resident_ = false;
    std::optional<InferenceJob> job_;
};

} // namespace sc3sim
