#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "spinsim/protocol.hpp"

using namespace spinsim;

namespace {

SharedRandomness from_z_signs(std::initializer_list<int> lambda_signs) {
    std::vector<UnitVector3> lambdas;
    for (int s : lambda_signs) lambdas.push_back(UnitVector3::normalized(0, 0, s));
    std::vector<UnitVector3> mus(lambdas.size(), UnitVector3::z_axis());
    return SharedRandomness(lambdas, mus);
}

}  // namespace

TEST(Sgn, Convention) {
    EXPECT_EQ(sgn(0.0), 1);
    EXPECT_EQ(sgn(-0.0), 1);
    EXPECT_EQ(sgn(-1e-300), -1);
    EXPECT_EQ(sgn(3.7), 1);
    EXPECT_THROW(sgn(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST(SampleUnitVector, MomentsOverMillionDraws) {
    CounterRng rng(101, 0);
    constexpr int kDraws = 1'000'000;
    double sx = 0, sy = 0, sz = 0, szz = 0, worst_norm = 0;
    for (int i = 0; i < kDraws; ++i) {
        const UnitVector3 v = sample_unit_vector(rng);
        sx += v.x();
        sy += v.y();
        sz += v.z();
        szz += v.z() * v.z();
        worst_norm = std::max(worst_norm, std::abs(v.x() * v.x() + v.y() * v.y() + v.z() * v.z() - 1.0));
    }
    EXPECT_LE(std::abs(sx / kDraws), 0.005);
    EXPECT_LE(std::abs(sy / kDraws), 0.005);
    EXPECT_LE(std::abs(sz / kDraws), 0.005);
    // <z^2> over the sphere by midpoint quadrature of z^2 / 2 on [-1, 1].
    double quad = 0.0;
    constexpr int kCells = 10000;
    for (int k = 0; k < kCells; ++k) {
        const double z = -1.0 + (k + 0.5) * 2.0 / kCells;
        quad += 0.5 * z * z * 2.0 / kCells;
    }
    EXPECT_NEAR(quad, 1.0 / 3.0, 1e-8);
    EXPECT_NEAR(szz / kDraws, quad, 0.005);
    EXPECT_LE(worst_norm, 1e-12);
}

TEST(SampleUnitVector, DeterministicSequence) {
    CounterRng r1(77, 5);
    CounterRng r2(77, 5);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_unit_vector(r1), sample_unit_vector(r2));
    CounterRng r3(77, 6);
    CounterRng r4(77, 5);
    EXPECT_NE(sample_unit_vector(r3), sample_unit_vector(r4));
}

TEST(AliceOutput, DirectEvaluation) {
    const UnitVector3 z = UnitVector3::z_axis();
    EXPECT_EQ(alice_output(z, from_z_signs({+1, +1})), -3);
    EXPECT_EQ(alice_output(z, from_z_signs({-1, +1})), +1);
    EXPECT_EQ(alice_output(z, from_z_signs({-1, -1, -1})), +7);
    EXPECT_EQ(alice_output(z, from_z_signs({+1})), -1);
}

TEST(AliceOutput, IgnoresMus) {
    CounterRng rng(5, 0);
    const UnitVector3 a = sample_unit_vector(rng);
    const SharedRandomness r = SharedRandomness::sample(3, rng);
    std::vector<UnitVector3> lambdas(r.lambdas().begin(), r.lambdas().end());
    std::vector<UnitVector3> flipped;
    for (const auto& m : r.mus()) flipped.push_back(UnitVector3::normalized(-m.x(), -m.y(), -m.z()));
    EXPECT_EQ(alice_output(a, r), alice_output(a, SharedRandomness(lambdas, flipped)));
}

TEST(AliceMessages, DirectEvaluation) {
    const UnitVector3 z = UnitVector3::z_axis();
    const std::vector<UnitVector3> up{UnitVector3::z_axis()};
    const std::vector<UnitVector3> down{UnitVector3::normalized(0, 0, -1)};
    EXPECT_EQ(alice_messages(z, SharedRandomness(up, down))[0], -1);
    EXPECT_EQ(alice_messages(z, SharedRandomness(up, up))[0], +1);
}

TEST(AliceMessages, PrivacyForSingleBit) {
    // P(alpha = +1/2 | c = +1) over 10^6 rounds.
    const UnitVector3 a = UnitVector3::normalized(0.2, -0.7, 0.4);
    std::int64_t with_c = 0;
    std::int64_t alpha_up = 0;
    for (std::int64_t r = 0; r < 1'000'000; ++r) {
        CounterRng rng(202, static_cast<std::uint64_t>(r));
        const SharedRandomness shared = SharedRandomness::sample(1, rng);
        if (alice_messages(a, shared)[0] == 1) {
            ++with_c;
            if (alice_output(a, shared) == 1) ++alpha_up;
        }
    }
    EXPECT_NEAR(static_cast<double>(alpha_up) / with_c, 0.5, 0.002);
}

TEST(BobOutput, DirectEvaluation) {
    const UnitVector3 z = UnitVector3::z_axis();
    const std::vector<UnitVector3> lam{UnitVector3::z_axis()};
    const std::vector<UnitVector3> mu{UnitVector3::normalized(1, 0, 0)};
    const std::vector<int> plus{1};
    EXPECT_EQ(bob_output(z, SharedRandomness(lam, mu), MessageBits(plus)), 1);

    const std::vector<UnitVector3> up2(2, UnitVector3::z_axis());
    const std::vector<int> pp{1, 1};
    EXPECT_EQ(bob_output(z, SharedRandomness(up2, up2), MessageBits(pp)), 3);
}

TEST(BobOutput, LengthMismatchThrows) {
    const std::vector<UnitVector3> up2(2, UnitVector3::z_axis());
    const std::vector<int> one{1};
    EXPECT_THROW(bob_output(UnitVector3::z_axis(), SharedRandomness(up2, up2), MessageBits(one)),
                 std::invalid_argument);
}

TEST(BobBit, EqualDirectionsCaseAnalysis) {
    // All four sign cases of (a.lambda, a.mu), including tiny and exactly-zero projections.
    const UnitVector3 a = UnitVector3::z_axis();
    const double zs[] = {1.0, 0.5, 1e-9, 1e-300, 0.0, -0.0, -1e-300, -1e-9, -0.5, -1.0};
    for (double zl : zs)
        for (double zm : zs) {
            const double rl = std::sqrt(1.0 - zl * zl);
            const double rm = std::sqrt(1.0 - zm * zm);
            const UnitVector3 lambda = UnitVector3::normalized(rl, 0.0, zl);
            const UnitVector3 mu = UnitVector3::normalized(0.0, rm, zm);
            const int c = sgn(a.dot(lambda)) * sgn(a.dot(mu));
            EXPECT_EQ(bob_bit(a, lambda, mu, c), sgn(a.dot(lambda))) << zl << " " << zm;
        }
}

TEST(BobOutput, EqualDirectionsGiveMinusAlphaEveryRound) {
    CounterRng dir(9, 0);
    for (int two_s : {1, 3, 7}) {
        const TwoSpin ts(two_s);
        const UnitVector3 a = sample_unit_vector(dir);
        std::int64_t violations = 0;
        for (std::int64_t r = 0; r < 1'000'000; ++r) {
            CounterRng rng(303 + two_s, static_cast<std::uint64_t>(r));
            const ProtocolRound round = run_round(ts, a, a, rng);
            if (round.beta_doubled != -round.alpha_doubled) ++violations;
        }
        EXPECT_EQ(violations, 0) << two_s;
    }
}

TEST(RunRound, EligibilityAndBitCounts) {
    CounterRng rng(1, 0);
    const UnitVector3 z = UnitVector3::z_axis();
    try {
        run_round(TwoSpin(2), z, z, rng);
        FAIL() << "expected rejection";
    } catch (const std::domain_error& e) {
        EXPECT_NE(std::string(e.what()).find("power of two"), std::string::npos);
    }
    EXPECT_THROW(run_round(TwoSpin(5), z, z, rng), std::domain_error);
    EXPECT_EQ(run_round(TwoSpin(1), z, z, rng).bits_sent, 1);
    EXPECT_EQ(run_round(TwoSpin(3), z, z, rng).bits_sent, 2);
    EXPECT_EQ(run_round(TwoSpin(7), z, z, rng).bits_sent, 3);
    EXPECT_EQ(run_round(TwoSpin(15), z, z, rng).bits_sent, 4);
    EXPECT_THROW(run_round(TwoSpin(127), z, z, rng), std::domain_error);
}

TEST(RunRound, OutputsAreOddAndInRange) {
    CounterRng dir(10, 0);
    for (int two_s : {1, 3, 7, 15, 31, 63}) {
        const TwoSpin ts(two_s);
        const UnitVector3 a = sample_unit_vector(dir);
        const UnitVector3 b = sample_unit_vector(dir);
        for (std::int64_t r = 0; r < 20000; ++r) {
            CounterRng rng(404, static_cast<std::uint64_t>(r));
            const ProtocolRound round = run_round(ts, a, b, rng);
            ASSERT_NE(round.alpha_doubled % 2, 0);
            ASSERT_NE(round.beta_doubled % 2, 0);
            ASSERT_LE(std::abs(round.alpha_doubled), two_s);
            ASSERT_LE(std::abs(round.beta_doubled), two_s);
            ASSERT_EQ(round.messages.size(), ts.cbits());
            ASSERT_EQ(round.bits_sent, ts.cbits());
        }
    }
}

TEST(RunRound, TraceIsConsistentWithPartyPrograms) {
    CounterRng dir(11, 0);
    const UnitVector3 a = sample_unit_vector(dir);
    const UnitVector3 b = sample_unit_vector(dir);
    for (std::int64_t r = 0; r < 1000; ++r) {
        CounterRng rng(505, static_cast<std::uint64_t>(r));
        const ProtocolRound round = run_round(TwoSpin(7), a, b, rng);
        EXPECT_EQ(round.alpha_doubled, alice_output(a, round.randomness));
        const MessageBits c = alice_messages(a, round.randomness);
        for (int k = 0; k < 3; ++k) EXPECT_EQ(c[k], round.messages[k]);
        EXPECT_EQ(round.beta_doubled, bob_output(b, round.randomness, round.messages));
        // Replaying the same stream reproduces the trace.
        CounterRng replay(505, static_cast<std::uint64_t>(r));
        const ProtocolRound again = run_round(TwoSpin(7), a, b, replay);
        EXPECT_EQ(again.alpha_doubled, round.alpha_doubled);
        EXPECT_EQ(again.beta_doubled, round.beta_doubled);
        for (int k = 0; k < 3; ++k) EXPECT_EQ(again.randomness.lambdas()[k], round.randomness.lambdas()[k]);
    }
}

TEST(MessageBits, RejectsInvalid) {
    const std::vector<int> bad{1, 0};
    EXPECT_THROW((MessageBits(bad)), std::invalid_argument);
    const std::vector<int> too_many(kMaxCbits + 1, 1);
    EXPECT_THROW((MessageBits(too_many)), std::length_error);
    const std::vector<UnitVector3> two(2, UnitVector3::z_axis());
    const std::vector<UnitVector3> one(1, UnitVector3::z_axis());
    EXPECT_THROW(SharedRandomness(two, one), std::invalid_argument);
}
