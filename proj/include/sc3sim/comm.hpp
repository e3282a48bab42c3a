#pragma once

#include <cstdint>
#include <vector>

#include "sc3sim/event.hpp"
#include "sc3sim/partition.hpp"
#include "sc3sim/rng.hpp"

namespace sc3sim {

// 5G-like numerology: 500 us slots, HARQ round trip of 4 slots. Nominal
// per-slot processing is calibrated at the 0.6 reference compute fraction.
struct SlotConfig {
    std::uint64_t slot_us = 500;
    double nominal_proc_us = 300.0;
    int harq_max_attempts = 4;
    int harq_rtt_slots = 4;
    double reference_compute_fraction = 0.6;
};

// Static stack footprint plus a load-dependent buffer term; bursts double the
// dynamic part via an exponential two-state on/off process.
struct BufferModel {
    double static_mib = 14848.0;
    double per_mbps_mib = 460.0;
    double burst_factor = 2.0;
    double burst_mean_on_ms = 200.0;
    double burst_mean_off_ms = 800.0;
};

struct LinkConfig {
    double link_capacity_mbps = 100.0;
    std::uint64_t propagation_us = 1000;
    std::uint64_t downlink_cmd_bytes = 256;
    std::uint64_t scheduling_delay_us = 2000;
};

// Windowed communication health fed back to the agent.
struct KpiSnapshot {
    SimTime window_start_us = 0;
    SimTime window_end_us = 0;
    double throughput_mbps = 0.0;
    double loss_rate = 0.0;          // in [0,1]
    double deadline_miss_rate = 0.0; // in [0,1]
    double buffer_occupancy_mib = 0.0;
    double avg_slot_latency_us = 0.0;
};

double comm_memory_demand(const BufferModel& buf, double offered_mbps, bool burst_on);

enum class SlotResult { OnTime, Missed };

struct SlotOutcome {
    SlotResult result = SlotResult::OnTime;
    double duration_us = 0.0;
};

// duration = nominal * (reference_fraction / compute_fraction) * slowdown;
// missed iff the deadline is blown or the buffer overflowed this slot.
SlotOutcome process_slot(const SlotConfig& cfg, const Partition& p, double slowdown, bool buffer_overflow);

// Fraction of dynamic traffic shed when demand exceeds the partition. Zero
// whenever the demand fits.
double drop_fraction(double demand_mib, double capacity_mib, double static_mib);

struct TransferOutcome {
    bool dropped = false;
    std::uint64_t latency_us = 0;
    int retransmissions = 0;
};

// Serialization at link rate plus propagation and scheduling; each lost
// attempt costs one HARQ round trip, and the transfer drops after
// harq_max_attempts losses. loss_probability applies independently per attempt.
TransferOutcome transfer_uplink(const LinkConfig& link, const SlotConfig& slots, double frame_bytes,
                                double loss_probability, Rng& rng);

// 256-byte command on the same latency law; ~3.0 ms with defaults.
TransferOutcome transfer_downlink(const LinkConfig& link, const SlotConfig& slots,
                                  double loss_probability, Rng& rng);

struct SlotSample {
    SimTime t_us = 0;
    double duration_us = 0.0;
    bool missed = false;
    double drop_fraction = 0.0;
    double offered_mbps = 0.0;
    double occupancy_mib = 0.0;
};

// Per-slot history with windowed aggregation. Empty windows yield all zeros.
class KpiTracker {
public:
    void record_slot(SlotSample s) { samples_.push_back(s); }

    // Aggregates samples with t in (window_end - window_us, window_end].
    KpiSnapshot snapshot(SimTime window_end, SimTime window_us) const;

    const std::vector<SlotSample>& samples() const { return samples_; }
    std::size_t slot_count() const { return samples_.size(); }
    std::size_t missed_count() const;
    double overall_loss_rate() const;
    double overall_miss_rate() const;
    double mean_offered_mbps() const;
    double slot_duration_stddev_us() const;

private:
    std::vector<SlotSample> samples_;
};

} // namespace sc3sim
