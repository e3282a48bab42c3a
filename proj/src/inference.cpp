#include "sc3sim/inference.hpp"

#include <algorithm>
#include <cmath>

namespace sc3sim {

std::string_view to_string(ResolutionTier t) {
    switch (t) {
    case ResolutionTier::Low: return "Low";
    case ResolutionTier::Mid: return "Mid";
    case ResolutionTier::High: return "High";
    }
    return "Unknown";
}

ResolutionTier tier_from_string(std::string_view name) {
    if (name == "Low") return ResolutionTier::Low;
    if (name == "Mid") return ResolutionTier::Mid;
    if (name == "High") return ResolutionTier::High;
    throw SchemaError("tier", "unknown tier '" + std::string(name) + "'");
}

const TierParams& TierTable::at(ResolutionTier t) const {
    switch (t) {
    case ResolutionTier::Low: return low;
    case ResolutionTier::Mid: return mid;
    case ResolutionTier::High: return high;
    }
    return high;
}

TierParams& TierTable::at(ResolutionTier t) {
    switch (t) {
    case ResolutionTier::Low: return low;
    case ResolutionTier::Mid: return mid;
    case ResolutionTier::High: return high;
    }
    return high;
}

std::uint64_t ModelProfile::activation_mib(ResolutionTier t) const {
    switch (t) {
    case ResolutionTier::Low: return activation_low_mib;
    case ResolutionTier::Mid: return activation_mid_mib;
    case ResolutionTier::High: return activation_high_mib;
    }
    return activation_high_mib;
}

std::uint64_t inference_memory_footprint(const ModelProfile& m, ResolutionTier tier) {
    return m.weights_mib + m.activation_mib(tier);
}

std::uint64_t inference_duration_us(const TierTable& tiers, const ModelProfile& m,
                                    ResolutionTier tier, double compute_fraction) {
    const double base_ms = tiers.at(tier).inf_base_ms;
    const double scaled_ms = base_ms * (m.reference_compute_fraction / compute_fraction);
    return static_cast<std::uint64_t>(std::llround(scaled_ms * 1000.0));
}

double bitrate_confidence(const TierTable& tiers, ResolutionTier tier, const ConfidenceModel& cm) {
    const double b = tiers.at(tier).stream_mbps;
    return cm.c_min + (cm.c_max - cm.c_min) * (1.0 - std::exp(-b / cm.b0_mbps));
}

double confidence(const TierTable& tiers, ResolutionTier tier, double distance_m, const ConfidenceModel& cm) {
    const double range_gain = std::min(1.0, cm.d0_m / distance_m);
    return bitrate_confidence(tiers, tier, cm) * range_gain;
}

bool InferenceContainer::start(Partition& p) {
    if (resident_) {
        return true;
    }
    if (profile_.weights_mib > p.free_mib()) {
        return false;
    }
    allocate(p, profile_.weights_mib);
    resident_ = true;
    return true;
}

void InferenceContainer::shutdown(Partition& p) {
    if (job_) {
        release(p, job_->activation_mib);
        job_.reset();
    }
    if (resident_) {
        release(p, profile_.weights_mib);
        resident_ = false;
    }
}

SimTime InferenceContainer::submit(Partition& p, const TierTable& tiers, ResolutionTier tier, SimTime now,
                                   std::uint64_t loop) {
    if (!resident_) {
        throw SimError("submit on a container that is not resident");
    }
    if (job_) {
        throw BusyError("inference job already in flight");
    }
    const std::uint64_t activation = profile_.activation_mib(tier);
    allocate(p, activation); // propagates OomError with the ledger untouched
    job_ = InferenceJob{loop, tier, now, p.id, activation};
    return now + inference_duration_us(tiers, profile_, tier, p.compute_fraction);
}

void InferenceContainer::complete(Partition& p) {
    if (!job_) {
        throw SimError("complete without an in-flight job");
    }
    release(p, job_->activation_mib);
    job_.reset();
}

} // namespace sc3sim
