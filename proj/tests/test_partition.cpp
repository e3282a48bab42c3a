#include "doctest.h"

#include <cmath>
#include <random>

#include "sc3sim/partition.hpp"

using namespace sc3sim;

namespace {

bool has_violation(const std::vector<LayoutViolation>& vs, LayoutViolation::Kind kind) {
    for (const auto& v : vs) {
        if (v.kind == kind) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("plan_layout: Proposed gives comm 60% / inference 40% at the 40 GiB cap, isolated") {
    const AcceleratorSpec spec;
    const auto layout = plan_layout(spec, StrategyName::Proposed);

    REQUIRE(layout.partitions.size() == 2);
    CHECK(layout.isolation_mode == IsolationMode::Isolated);

    const auto& comm = layout.by_owner(WorkloadOwner::Comm);
    const auto& inf = layout.by_owner(WorkloadOwner::Inference);
    CHECK(comm.compute_fraction == doctest::Approx(0.6));
    CHECK(comm.memory_capacity_mib == 40960);
    CHECK(inf.compute_fraction == doctest::Approx(0.4));
    CHECK(inf.memory_capacity_mib == 40960);
}

TEST_CASE("plan_layout: StrategyA squeezes inference to 25% of total memory") {
    const auto layout = plan_layout(AcceleratorSpec{}, StrategyName::StrategyA);
    CHECK(layout.by_owner(WorkloadOwner::Comm).memory_capacity_mib == 40960);
    CHECK(layout.by_owner(WorkloadOwner::Inference).memory_capacity_mib == 20480);
}

TEST_CASE("plan_layout: StrategyB squeezes comm to 25% of total memory") {
    const auto layout = plan_layout(AcceleratorSpec{}, StrategyName::StrategyB);
    CHECK(layout.by_owner(WorkloadOwner::Comm).memory_capacity_mib == 20480);
    CHECK(layout.by_owner(WorkloadOwner::Inference).memory_capacity_mib == 40960);
}

TEST_CASE("plan_layout: SharedNoIsolation keeps the memory split but shares compute") {
    const auto layout = plan_layout(AcceleratorSpec{}, StrategyName::SharedNoIsolation);
    CHECK(layout.isolation_mode == IsolationMode::Shared);
    CHECK(layout.by_owner(WorkloadOwner::Comm).memory_capacity_mib == 40960);
}

TEST_CASE("validate_layout: every built-in strategy validates clean") {
    const AcceleratorSpec spec;
    for (const auto s : {StrategyName::Proposed, StrategyName::StrategyA, StrategyName::StrategyB,
                         StrategyName::SharedNoIsolation}) {
        CHECK(validate_layout(spec, plan_layout(spec, s)).empty());
    }
}

TEST_CASE("validate_layout: two 0.6-compute partitions exceed the budget") {
    PartitionLayout layout;
    layout.partitions.push_back(Partition{"a", WorkloadOwner::Comm, 0.6, 1024, 0});
    layout.partitions.push_back(Partition{"b", WorkloadOwner::Inference, 0.6, 1024, 0});
    const auto vs = validate_layout(AcceleratorSpec{}, layout);
    CHECK(has_violation(vs, LayoutViolation::Kind::SumComputeExceeded));
}

TEST_CASE("validate_layout: a 48 GiB instance exceeds the per-instance cap") {
    PartitionLayout layout;
    layout.partitions.push_back(Partition{"a", WorkloadOwner::Comm, 0.5, 49152, 0});
    const auto vs = validate_layout(AcceleratorSpec{}, layout);
    CHECK(has_violation(vs, LayoutViolation::Kind::InstanceCapExceeded));
}

TEST_CASE("validate_layout: duplicate owners and exhausted totals are reported") {
    PartitionLayout layout;
    layout.partitions.push_back(Partition{"a", WorkloadOwner::Comm, 0.5, 40960, 0});
    layout.partitions.push_back(Partition{"b", WorkloadOwner::Comm, 0.4, 40960, 0});
    layout.partitions.push_back(Partition{"c", WorkloadOwner::Inference, 0.1, 40960, 0});
    const auto vs = validate_layout(AcceleratorSpec{}, layout);
    CHECK(has_violation(vs, LayoutViolation::Kind::DuplicateOwner));
    CHECK(has_violation(vs, LayoutViolation::Kind::SumMemoryExceeded));
}

TEST_CASE("allocate: the High-tier model fits a 40 GiB instance") {
    Partition p{"p", WorkloadOwner::Inference, 0.4, 40960, 0};
    allocate(p, 37888);
    CHECK(p.memory_used_mib == 37888);
    CHECK(p.free_mib() == 3072);
}

TEST_CASE("allocate: the High-tier model overflows a 20 GiB instance") {
    Partition p{"p", WorkloadOwner::Inference, 0.4, 20480, 0};
    CHECK_THROWS_AS(allocate(p, 37888), OomError);
    CHECK(p.memory_used_mib == 0); // ledger untouched on failure
}

TEST_CASE("allocate: zero is a no-op; boundary fill succeeds") {
    Partition p{"p", WorkloadOwner::Comm, 0.6, 1000, 0};
    allocate(p, 0);
    CHECK(p.memory_used_mib == 0);
    allocate(p, 1000);
    CHECK(p.free_mib() == 0);
    CHECK_THROWS_AS(allocate(p, 1), OomError);
}

TEST_CASE("release: inverse of allocate; underflow rejected") {
    Partition p{"p", WorkloadOwner::Inference, 0.4, 40960, 0};
    allocate(p, 37888);
    release(p, 37888);
    CHECK(p.memory_used_mib == 0);
    CHECK_THROWS_AS(release(p, 1), ReleaseUnderflow);
}

TEST_CASE("ledger: 1000 random operations match a brute-force replay") {
    // Oracle: a bare integer ledger applying the same accept/reject rules.
    Partition p{"p", WorkloadOwner::Inference, 0.4, 4096, 0};
    std::uint64_t oracle_used = 0;

    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<int> op(0, 1);
    std::uniform_int_distribution<std::uint64_t> amount(0, 1500);

    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t a = amount(gen);
        if (op(gen) == 0) {
            const bool fits = a <= 4096 - oracle_used;
            if (fits) {
                allocate(p, a);
                oracle_used += a;
            } else {
                CHECK_THROWS_AS(allocate(p, a), OomError);
            }
        } else {
            const bool ok = a <= oracle_used;
            if (ok) {
                release(p, a);
                oracle_used -= a;
            } else {
                CHECK_THROWS_AS(release(p, a), ReleaseUnderflow);
            }
        }
        REQUIRE(p.memory_used_mib == oracle_used);
        REQUIRE(p.memory_used_mib <= p.memory_capacity_mib);
    }
}

TEST_CASE("ledger: alternating allocate/release leaves the ledger at its start") {
    Partition p{"p", WorkloadOwner::Comm, 0.6, 40960, 512};
    for (int i = 0; i < 1000; ++i) {
        allocate(p, 2048);
        release(p, 2048);
    }
    CHECK(p.memory_used_mib == 512);
}

TEST_CASE("isolation invariance: traffic on one partition never touches the other") {
    AcceleratorSpec spec;
    auto layout = plan_layout(spec, StrategyName::Proposed);
    auto& comm = layout.by_owner(WorkloadOwner::Comm);
    const auto& inf = layout.by_owner(WorkloadOwner::Inference);

    const std::uint64_t inf_free_before = inf.free_mib();
    Rng rng(5);

    std::mt19937_64 gen(77);
    std::uniform_int_distribution<std::uint64_t> amount(0, 4000);
    for (int i = 0; i < 500; ++i) {
        const std::uint64_t a = amount(gen);
        if (a <= comm.free_mib()) {
            allocate(comm, a);
        }
        if (comm.memory_used_mib > 0) {
            release(comm, comm.memory_used_mib / 2);
        }
        CHECK(inf.free_mib() == inf_free_before);
        CHECK(effective_slowdown(inf, layout, true, rng) == 1.0);
    }
    CHECK(rng.draws() == 0); // isolated mode never consumes randomness
}

TEST_CASE("effective_slowdown: isolated mode pins 1.0 even under inference load") {
    auto layout = plan_layout(AcceleratorSpec{}, StrategyName::Proposed);
    Rng rng(1);
    CHECK(effective_slowdown(layout.by_owner(WorkloadOwner::Comm), layout, true, rng) == 1.0);
    CHECK(effective_slowdown(layout.by_owner(WorkloadOwner::Comm), layout, false, rng) == 1.0);
}

TEST_CASE("effective_slowdown: shared mode is 1.0 when inference idles") {
    auto layout = plan_layout(AcceleratorSpec{}, StrategyName::SharedNoIsolation);
    Rng rng(1);
    CHECK(effective_slowdown(layout.by_owner(WorkloadOwner::Comm), layout, false, rng) == 1.0);
}

TEST_CASE("effective_slowdown: shared + active samples 1 + Exp(0.8)") {
    auto layout = plan_layout(AcceleratorSpec{}, StrategyName::SharedNoIsolation);
    const auto& comm = layout.by_owner(WorkloadOwner::Comm);
    Rng rng(31415);

    const int n = 10000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m = effective_slowdown(comm, layout, true, rng);
        CHECK(m >= 1.0);
        sum += m;
    }
    const double mean = sum / n;
    // Monte-Carlo check against the exponential mean 0.8 (sigma/sqrt(n) = 0.008).
    CHECK(mean > 1.76);
    CHECK(mean < 1.84);
}
