#include "sc3sim/comm.hpp"

#include <algorithm>
#include <cmath>

namespace sc3sim {

double comm_memory_demand(const BufferModel& buf, double offered_mbps, bool burst_on) {
    const double burst = burst_on ? buf.burst_factor : 1.0;
    return buf.static_mib + buf.per_mbps_mib * offered_mbps * burst;
}

SlotOutcome process_slot(const SlotConfig& cfg, const Partition& p, double slowdown, bool buffer_overflow) {
    SlotOutcome out;
    out.duration_us = cfg.nominal_proc_us * (cfg.reference_compute_fraction / p.compute_fraction) * slowdown;
    const bool deadline_blown = out.duration_us > static_cast<double>(cfg.slot_us);
    out.result = (deadline_blown || buffer_overflow) ? SlotResult::Missed : SlotResult::OnTime;
    return out;
}

double drop_fraction(double demand_mib, double capacity_mib, double static_mib) {
    if (demand_mib <= capacity_mib) {
        return 0.0;
    }
    return (demand_mib - capacity_mib) / (demand_mib - static_mib);
}

namespace {

TransferOutcome transfer(const LinkConfig& link, const SlotConfig& slots, double payload_bytes,
                         double loss_probability, Rng& rng) {
    // bits / (Mbit/s) is microseconds directly.
    const double base_us = payload_bytes * 8.0 / link.link_capacity_mbps +
                           static_cast<double>(link.propagation_us) +
                           static_cast<double>(link.scheduling_delay_us);
    const double harq_rtt_us = static_cast<double>(slots.harq_rtt_slots) * static_cast<double>(slots.slot_us);

    TransferOutcome out;
    for (int attempt = 1; attempt <= slots.harq_max_attempts; ++attempt) {
        const bool lost = loss_probability > 0.0 && rng.next_unit() < loss_probability;
        if (!lost) {
            out.retransmissions = attempt - 1;
            out.latency_us = static_cast<std::uint64_t>(
                std::llround(base_us + harq_rtt_us * static_cast<double>(out.retransmissions)));
            return out;
        }
    }
    out.dropped = true;
    out.retransmissions = slots.harq_max_attempts - 1;
    out.latency_us = static_cast<std::uint64_t>(
        std::llround(base_us + harq_rtt_us * static_cast<double>(slots.harq_max_attempts - 1)));
    return out;
}

} // namespace

TransferOutcome transfer_uplink(const LinkConfig& link, const SlotConfig& slots, double frame_bytes,
                                double loss_probability, Rng& rng) {
    return transfer(link, slots, frame_bytes, loss_probability, rng);
}

TransferOutcome transfer_downlink(const LinkConfig& link, const SlotConfig& slots,
                                  double loss_probability, Rng& rng) {
    return transfer(link, slots, static_cast<double>(link.downlink_cmd_bytes), loss_probability, rng);
}

KpiSnapshot KpiTracker::snapshot(SimTime window_end, SimTime window_us) const {
    KpiSnapshot snap;
    snap.window_end_us = window_end;
    snap.window_start_us = window_end >= window_us ? window_end - window_us : 0;

    double duration_sum = 0.0;
    double drop_sum = 0.0;
    double delivered_sum = 0.0;
    double occupancy_sum = 0.0;
    std::size_t n = 0;
    std::size_t missed = 0;

    // Window is (window_end - window_us, window_end]; samples arrive in time order.
    for (auto it = samples_.rbegin(); it != samples_.rend(); ++it) {
        if (it->t_us > window_end) {
            continue;
        }
        if (it->t_us + window_us <= window_end) {
            break;
        }
        ++n;
        duration_sum += it->duration_us;
        drop_sum += it->drop_fraction;
        delivered_sum += it->offered_mbps * (1.0 - it->drop_fraction);
        occupancy_sum += it->occupancy_mib;
        if (it->missed) {
            ++missed;
        }
    }

    if (n == 0) {
        return snap;
    }
    const double dn = static_cast<double>(n);
    snap.throughput_mbps = delivered_sum / dn;
    snap.loss_rate = drop_sum / dn;
    snap.deadline_miss_rate = static_cast<double>(missed) / dn;
    snap.buffer_occupancy_mib = occupancy_sum / dn;
    snap.avg_slot_latency_us = duration_sum / dn;
    return snap;
}

std::size_t KpiTracker::missed_count() const {
    return static_cast<std::size_t>(
        std::count_if(samples_.begin(), samples_.end(), [](const SlotSample& s) { return s.missed; }));
}

double KpiTracker::overall_loss_rate() const {
    if (samples_.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& s : samples_) {
        sum += s.drop_fraction;
    }
    return sum / static_cast<double>(samples_.size());
}

double KpiTracker::overall_miss_rate() const {
    if (samples_.empty()) {
        return 0.0;
    }
    return static_cast<double>(missed_count()) / static_cast<double>(samples_.size());
}

double KpiTracker::mean_offered_mbps() const {
    if (samples_.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& s : samples_) {
        sum += s.offered_mbps;
    }
    return sum / static_cast<double>(samples_.size());
}

double KpiTracker::slot_duration_stddev_us() const {
    if (samples_.size() < 2) {
        return 0.0;
    }
    double mean = 0.0;
    for (const auto& s : samples_) {
        mean += s.duration_us;
    }
    mean /= static_cast<double>(samples_.size());
    double var = 0.0;
    for (const auto& s : samples_) {
        var += (s.duration_us - mean) * (s.duration_us - mean);
    }
    var /= static_cast<double>(samples_.size());
    return std::sqrt(var);
}

} // namespace sc3sim
