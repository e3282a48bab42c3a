#include "doctest.h"

#include <cmath>

#include "sc3sim/inference.hpp"

using namespace sc3sim;

TEST_CASE("footprint: High tier totals 37888 MiB (about 37 GB)") {
    CHECK(inference_memory_footprint(ModelProfile{}, ResolutionTier::High) == 37888);
}

TEST_CASE("footprint: Low tier is weights plus the small activation slab") {
    CHECK(inference_memory_footprint(ModelProfile{}, ResolutionTier::Low) == 36352);
}

TEST_CASE("footprint: every tier overflows a 20 GiB instance, fits a 40 GiB one") {
    const ModelProfile m;
    for (const auto t : {ResolutionTier::Low, ResolutionTier::Mid, ResolutionTier::High}) {
        CHECK(inference_memory_footprint(m, t) > 20480);
        CHECK(inference_memory_footprint(m, t) <= 40960);
    }
}

TEST_CASE("container_start: weights go resident on a 40 GiB instance") {
    Partition p{"i", WorkloadOwner::Inference, 0.4, 40960, 0};
    InferenceContainer c((ModelProfile()));
    REQUIRE(c.start(p));
    CHECK(c.resident());
    CHECK(p.memory_used_mib == 35840);
}

TEST_CASE("container_start: weights do not fit a 20 GiB instance") {
    Partition p{"i", WorkloadOwner::Inference, 0.4, 20480, 0};
    InferenceContainer c((ModelProfile()));
    CHECK_FALSE(c.start(p));
    CHECK_FALSE(c.resident());
    CHECK(p.memory_used_mib == 0);
}

TEST_CASE("container_start: restart after shutdown goes resident again") {
    Partition p{"i", WorkloadOwner::Inference, 0.4, 40960, 0};
    InferenceContainer c((ModelProfile()));
    REQUIRE(c.start(p));
    c.shutdown(p);
    CHECK(p.memory_used_mib == 0);
    REQUIRE(c.start(p));
    CHECK(p.memory_used_mib == 35840);
}

TEST_CASE("inference_duration: High tier at the reference fraction is 550 ms") {
    CHECK(inference_duration_us(TierTable{}, ModelProfile{}, ResolutionTier::High, 0.4) == 550000);
}

TEST_CASE("inference_duration: doubling compute halves the duration") {
    CHECK(inference_duration_us(TierTable{}, ModelProfile{}, ResolutionTier::High, 0.8) == 275000);
}

TEST_CASE("inference_duration: monotone decreasing in the compute fraction") {
    const TierTable tiers;
    const ModelProfile m;
    std::uint64_t prev = UINT64_MAX;
    for (double f = 0.1; f <= 1.0; f += 0.1) {
        const auto d = inference_duration_us(tiers, m, ResolutionTier::Mid, f);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("submit: job occupies the activation slab and lands at now + duration") {
    Partition p{"i", WorkloadOwner::Inference, 0.4, 40960, 0};
    InferenceContainer c((ModelProfile()));
    REQUIRE(c.start(p));

    const std::uint64_t before = p.memory_used_mib;
    const SimTime done = c.submit(p, TierTable{}, ResolutionTier::High, 1'000'000, 3);
    CHECK(done == 1'550'000);
    CHECK(p.memory_used_mib == before + 2048);
    CHECK(c.busy());

    REQUIRE(c.job().has_value());
    CHECK(c.job()->loop == 3);
    CHECK(c.job()->tier == ResolutionTier::High);
    CHECK(c.job()->submit_us == 1'000'000);
    CHECK(c.job()->partition_id == "i");

    c.complete(p);
    CHECK(p.memory_used_mib == before); // ledger back to weights-resident level
    CHECK_FALSE(c.busy());
}

TEST_CASE("submit: a second job while one is in flight is Busy") {
    Partition p{"i", WorkloadOwner::Inference, 0.4, 40960, 0};
    InferenceContainer c((ModelProfile()));
    REQUIRE(c.start(p));
    (void)c.submit(p, TierTable{}, ResolutionTier::Low, 0);
    CHECK_THROWS_AS((void)c.submit(p, TierTable{}, ResolutionTier::Low, 10), BusyError);
}

TEST_CASE("submit: activation Oom leaves the ledger unchanged") {
    // Weights fit exactly; no headroom for any activation.
    ModelProfile m;
    m.weights_mib = 20480;
    Partition p{"i", WorkloadOwner::Inference, 0.4, 20480, 0};
    InferenceContainer c(m);
    REQUIRE(c.start(p));
    const std::uint64_t before = p.memory_used_mib;
    CHECK_THROWS_AS((void)c.submit(p, TierTable{}, ResolutionTier::Low, 0), OomError);
    CHECK(p.memory_used_mib == before);
    CHECK_FALSE(c.busy());
}

TEST_CASE("confidence: closed-form values at close range") {
    const TierTable tiers;
    const ConfidenceModel cm;

    // Independent algebraic route: c_max - (c_max - c_min) * exp(-b/b0).
    const auto oracle = [&](double b) { return cm.c_max - (cm.c_max - cm.c_min) * std::exp(-b / cm.b0_mbps); };

    const double high = confidence(tiers, ResolutionTier::High, 4.0, cm);
    const double mid = confidence(tiers, ResolutionTier::Mid, 4.0, cm);
    const double low = confidence(tiers, ResolutionTier::Low, 4.0, cm);

    CHECK(high == doctest::Approx(oracle(12.0)).epsilon(1e-9));
    CHECK(mid == doctest::Approx(oracle(4.5)).epsilon(1e-9));
    CHECK(low == doctest::Approx(oracle(0.9)).epsilon(1e-9));

    CHECK(high == doctest::Approx(0.9390).epsilon(1e-4));
    CHECK(low == doctest::Approx(0.5055).epsilon(1e-4));
    CHECK(mid == doctest::Approx(0.8161).epsilon(1e-4));
}

TEST_CASE("confidence: ordering High > Mid > Low at equal distance") {
    const TierTable tiers;
    const ConfidenceModel cm;
    for (double d = 1.0; d <= 12.0; d += 1.0) {
        const double high = confidence(tiers, ResolutionTier::High, d, cm);
        const double mid = confidence(tiers, ResolutionTier::Mid, d, cm);
        const double low = confidence(tiers, ResolutionTier::Low, d, cm);
        CHECK(high > mid);
        CHECK(mid > low);
    }
}

TEST_CASE("confidence: non-increasing in distance, attenuated beyond d0") {
    const TierTable tiers;
    const ConfidenceModel cm;
    CHECK(confidence(tiers, ResolutionTier::High, 2.0, cm) ==
          doctest::Approx(confidence(tiers, ResolutionTier::High, 5.0, cm)));
    double prev = 1.0;
    for (double d = 1.0; d <= 20.0; d += 0.5) {
        const double c = confidence(tiers, ResolutionTier::High, d, cm);
        CHECK(c <= prev + 1e-12);
        prev = c;
    }
    CHECK(confidence(tiers, ResolutionTier::High, 10.0, cm) ==
          doctest::Approx(0.5 * bitrate_confidence(tiers, ResolutionTier::High, cm)));
}

TEST_CASE("tier table: attributes strictly increase Low -> High") {
    const TierTable t;
    CHECK(t.low.still_frame_kb < t.mid.still_frame_kb);
    CHECK(t.mid.still_frame_kb < t.high.still_frame_kb);
    CHECK(t.low.stream_mbps < t.mid.stream_mbps);
    CHECK(t.mid.stream_mbps < t.high.stream_mbps);
    CHECK(t.low.inf_base_ms < t.mid.inf_base_ms);
    CHECK(t.mid.inf_base_ms < t.high.inf_base_ms);
}
