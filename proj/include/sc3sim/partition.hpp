#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sc3sim/errors.hpp"
#include "sc3sim/rng.hpp"

namespace sc3sim {

struct AcceleratorSpec {
    std::uint64_t total_memory_mib = 81920;        // A100X-class, 80 GiB
    std::uint64_t max_instance_memory_mib = 40960; // per-instance cap, 40 GiB
    double total_compute = 1.0;
};

enum class WorkloadOwner { Comm, Inference };

constexpr std::string_view to_string(WorkloadOwner o) {
    return o == WorkloadOwner::Comm ? "comm" : "inference";
}

// Hard-isolated accelerator slice with its own memory ledger (1 MiB grain).
struct Partition {
    std::string id;
    WorkloadOwner owner = WorkloadOwner::Comm;
    double compute_fraction = 0.0; // in (0, 1]
    std::uint64_t memory_capacity_mib = 0;
    std::uint64_t memory_used_mib = 0;

    std::uint64_t free_mib() const { return memory_capacity_mib - memory_used_mib; }
};

enum class IsolationMode { Isolated, Shared };

struct PartitionLayout {
    std::vector<Partition> partitions;
    IsolationMode isolation_mode = IsolationMode::Isolated;

    Partition& by_owner(WorkloadOwner o);
    const Partition& by_owner(WorkloadOwner o) const;
};

enum class StrategyName { Proposed, StrategyA, StrategyB, SharedNoIsolation, Custom };

std::string_view to_string(StrategyName s);
StrategyName strategy_from_string(std::string_view name); // throws SchemaError

struct LayoutViolation {
    enum class Kind {
        SumComputeExceeded,
        SumMemoryExceeded,
        InstanceCapExceeded,
        DuplicateOwner,
        InvalidComputeFraction,
        UsedExceedsCapacity,
    };

    Kind kind;
    std::string detail;
};

std::string_view to_string(LayoutViolation::Kind k);

// Built-in strategies vary memory only; the compute split stays 0.6/0.4.
// Custom layouts go through plan_custom_layout which validates before use.
PartitionLayout plan_layout(const AcceleratorSpec& spec, StrategyName strategy);
PartitionLayout plan_custom_layout(const AcceleratorSpec& spec, PartitionLayout layout); // throws InvalidCustomLayout

// Empty result iff every layout invariant holds. Violations are data.
std::vector<LayoutViolation> validate_layout(const AcceleratorSpec& spec, const PartitionLayout& layout);

// Ledger mutation. Isolation means no other partition is touched.
void allocate(Partition& p, std::uint64_t amount_mib); // throws OomError
void release(Partition& p, std::uint64_t amount_mib);  // throws ReleaseUnderflow

// Interference multiplier on comm processing. Hard isolation pins it at 1.0;
// shared mode with a concurrently active inference job draws 1 + Exp(j_mean).
double effective_slowdown(const Partition& p, const PartitionLayout& layout,
                          bool concurrent_inference_active, Rng& rng, double j_mean = 0.8);

} // namespace sc3sim
