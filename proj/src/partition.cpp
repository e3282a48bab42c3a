#include "sc3sim/partition.hpp"

#include <algorithm>
#include <set>

namespace sc3sim {

Partition& PartitionLayout::by_owner(WorkloadOwner o) {
    for (auto& p : partitions) {
        if (p.owner == o) {
            return p;
        }
    }
    throw SimError("no partition owned by " + std::string(to_string(o)));
}

const Partition& PartitionLayout::by_owner(WorkloadOwner o) const {
    for (const auto& p : partitions) {
        if (p.owner == o) {
            return p;
        }
    }
    throw SimError("no partition owned by " + std::string(to_string(o)));
}

std::string_view to_string(StrategyName s) {
    switch (s) {
    case StrategyName::Proposed: return "Proposed";
    case StrategyName::StrategyA: return "StrategyA";
    case StrategyName::StrategyB: return "StrategyB";
    case StrategyName::SharedNoIsolation: return "SharedNoIsolation";
    case StrategyName::Custom: return "Custom";
    }
    return "Unknown";
}

StrategyName strategy_from_string(std::string_view name) {
    if (name == "Proposed") return StrategyName::Proposed;
    if (name == "StrategyA") return StrategyName::StrategyA;
    if (name == "StrategyB") return StrategyName::StrategyB;
    if (name == "SharedNoIsolation") return StrategyName::SharedNoIsolation;
    if (name == "Custom") return StrategyName::Custom;
    throw SchemaError("strategy", "unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(LayoutViolation::Kind k) {
    switch (k) {
    case LayoutViolation::Kind::SumComputeExceeded: return "SumComputeExceeded";
    case LayoutViolation::Kind::SumMemoryExceeded: return "SumMemoryExceeded";
    case LayoutViolation::Kind::InstanceCapExceeded: return "InstanceCapExceeded";
    case LayoutViolation::Kind::DuplicateOwner: return "DuplicateOwner";
    case LayoutViolation::Kind::InvalidComputeFraction: return "InvalidComputeFraction";
    case LayoutViolation::Kind::UsedExceedsCapacity: return "UsedExceedsCapacity";
    }
    return "Unknown";
}

namespace {

PartitionLayout two_way_layout(std::uint64_t comm_mib, std::uint64_t inference_mib, IsolationMode mode) {
    PartitionLayout layout;
    layout.isolation_mode = mode;
    layout.partitions.push_back(Partition{"p-comm", WorkloadOwner::Comm, 0.6, comm_mib, 0});
    layout.partitions.push_back(Partition{"p-inference", WorkloadOwner::Inference, 0.4, inference_mib, 0});
    return layout;
}

} // namespace

PartitionLayout plan_layout(const AcceleratorSpec& spec, StrategyName strategy) {
    const std::uint64_t cap = spec.max_instance_memory_mib;
    const std::uint64_t quarter = spec.total_memory_mib / 4;
    switch (strategy) {
    case StrategyName::Proposed:
        return two_way_layout(cap, cap, IsolationMode::Isolated);
    case StrategyName::StrategyA:
        // 25% of total memory for computation.
        return two_way_layout(cap, quarter, IsolationMode::Isolated);
    case StrategyName::StrategyB:
        // 25% of total memory for communication.
        return two_way_layout(quarter, cap, IsolationMode::Isolated);
    case StrategyName::SharedNoIsolation:
        return two_way_layout(cap, cap, IsolationMode::Shared);
    case StrategyName::Custom:
        throw InvalidCustomLayout("Custom strategy requires an explicit layout");
    }
    throw SimError("unreachable strategy");
}

PartitionLayout plan_custom_layout(const AcceleratorSpec& spec, PartitionLayout layout) {
    const auto violations = validate_layout(spec, layout);
    if (!violations.empty()) {
        std::string detail;
        for (const auto& v : violations) {
            if (!detail.empty()) {
                detail += "; ";
            }
            detail += std::string(to_string(v.kind)) + ": " + v.detail;
        }
        throw InvalidCustomLayout("custom layout invalid: " + detail);
    }
    return layout;
}

std::vector<LayoutViolation> validate_layout(const AcceleratorSpec& spec, const PartitionLayout& layout) {
    std::vector<LayoutViolation> out;

    double compute_sum = 0.0;
    std::uint64_t memory_sum = 0;
    std::set<WorkloadOwner> owners;

    for (const auto& p : layout.partitions) {
        compute_sum += p.compute_fraction;
        memory_sum += p.memory_capacity_mib;

        if (p.compute_fraction <= 0.0 || p.compute_fraction > 1.0) {
            out.push_back({LayoutViolation::Kind::InvalidComputeFraction,
                           p.id + " compute_fraction " + std::to_string(p.compute_fraction)});
        }
        if (p.memory_capacity_mib > spec.max_instance_memory_mib) {
            out.push_back({LayoutViolation::Kind::InstanceCapExceeded,
                           p.id + " capacity " + std::to_string(p.memory_capacity_mib) + " MiB > cap " +
                               std::to_string(spec.max_instance_memory_mib) + " MiB"});
        }
        if (p.memory_used_mib > p.memory_capacity_mib) {
            out.push_back({LayoutViolation::Kind::UsedExceedsCapacity,
                           p.id + " used " + std::to_string(p.memory_used_mib) + " MiB > capacity " +
                               std::to_string(p.memory_capacity_mib) + " MiB"});
        }
        if (!owners.insert(p.owner).second) {
            out.push_back({LayoutViolation::Kind::DuplicateOwner,
                           "owner " + std::string(to_string(p.owner)) + " mapped more than once"});
        }
    }

    if (compute_sum > spec.total_compute + 1e-12) {
        out.push_back({LayoutViolation::Kind::SumComputeExceeded,
                       "sum " + std::to_string(compute_sum) + " > " + std::to_string(spec.total_compute)});
    }
    if (memory_sum > spec.total_memory_mib) {
        out.push_back({LayoutViolation::Kind::SumMemoryExceeded,
                       "sum " + std::to_string(memory_sum) + " MiB > " +
                           std::to_string(spec.total_memory_mib) + " MiB"});
    }

    return out;
}

void allocate(Partition& p, std::uint64_t amount_mib) {
    if (amount_mib > p.free_mib()) {
        throw OomError(p.id + ": allocate " + std::to_string(amount_mib) + " MiB exceeds free " +
                       std::to_string(p.free_mib()) + " MiB");
    }
    p.memory_used_mib += amount_mib;
}

void release(Partition& p, std::uint64_t amount_mib) {
    if (amount_mib > p.memory_used_mib) {
        throw ReleaseUnderflow(p.id + ": release " + std::to_string(amount_mib) + " MiB exceeds used " +
                               std::to_string(p.memory_used_mib) + " MiB");
    }
    p.memory_used_mib -= amount_mib;
}

double effective_slowdown(const Partition& p, const PartitionLayout& layout,
                          bool concurrent_inference_active, Rng& rng, double j_mean) {
    (void)p;
    if (layout.isolation_mode == IsolationMode::Isolated) {
        return 1.0;
    }
    if (!concurrent_inference_active) {
        return 1.0;
    }
    return 1.0 + rng.next_exponential(j_mean);
}

} // namespace sc3sim
