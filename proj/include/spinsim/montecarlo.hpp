#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spinsim/oracle.hpp"
#include "spinsim/protocol.hpp"

namespace spinsim {

inline constexpr std::uint64_t kDefaultSeed = 20080917;

struct EstimatorConfig {
    TwoSpin two_s{1};
    UnitVector3 a = UnitVector3::z_axis();
    UnitVector3 b = UnitVector3::z_axis();
    std::int64_t trials = 1'000'000;
    std::uint64_t master_seed = kDefaultSeed;
    int workers = 1;
};

/// Integer accumulators over a range of rounds. Because outcomes are doubled integers, every
/// moment (sum of 2a, 2b, 4ab, (4ab)^2) is an exact integer and merging is exact in any order.
struct RoundStatistics {
    explicit RoundStatistics(TwoSpin two_s)
        : two_s(two_s), joint_counts(static_cast<std::size_t>(two_s.dim()) * two_s.dim(), 0) {}

    TwoSpin two_s;
    std::int64_t rounds = 0;
    std::int64_t sum_alpha2 = 0;
    std::int64_t sum_beta2 = 0;
    std::int64_t sum_product4 = 0;
    std::int64_t sum_product4_sq = 0;
    std::int64_t total_bits = 0;
    std::vector<std::int64_t> joint_counts;

    void record(const ProtocolRound& round);
    void merge(const RoundStatistics& other);

    std::vector<std::int64_t> alice_counts() const;
    std::vector<std::int64_t> bob_counts() const;

    friend bool operator==(const RoundStatistics&, const RoundStatistics&) = default;
};

/// Plays rounds [first, last) with per-round streams CounterRng(seed, round_index).
RoundStatistics accumulate_rounds(const EstimatorConfig& config, std::int64_t first, std::int64_t last);

struct SimulationReport {
    EstimatorConfig config;
    double corr_estimate = 0.0;
    double corr_stderr = 0.0;
    double corr_quantum = 0.0;
    double mean_alpha = 0.0;
    double mean_beta = 0.0;
    std::vector<double> marginal_alpha;
    std::vector<double> marginal_beta;
    OutcomeDistribution joint_empirical{TwoSpin{1}};
    OutcomeDistribution joint_quantum{TwoSpin{1}};
    double tvd = 0.0;
    double chi2_alpha = 0.0;
    double chi2_beta = 0.0;
    int bits_per_round = 0;
    std::int64_t total_bits = 0;
};

/// Runs config.trials rounds split across config.workers threads and fills a report.
SimulationReport estimate(const EstimatorConfig& config);

/// Report fields derived from accumulated statistics (used by estimate).
SimulationReport make_report(const EstimatorConfig& config, const RoundStatistics& stats);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct SweepResult {
    TwoSpin two_s{1};
    std::vector<double> thetas;
    std::vector<SimulationReport> reports;
    LinearFit fit;
};

/// `points` equally spaced theta on [0, pi]; a = z, b = (sin t, 0, cos t). Fits
/// corr_estimate against cos(theta). Point p uses master seed mix64(master_seed + p).
SweepResult sweep(TwoSpin two_s, std::int64_t trials_per_point, int points, std::uint64_t master_seed,
                  int workers = 1);

/// Pearson statistic against the uniform distribution. Requires total >= 10 * bins.
double chi_squared_uniform(std::span<const std::int64_t> histogram);

/// Two-sample chi-squared homogeneity statistic (df = bins - 1, bins empty in both are skipped).
double chi_squared_homogeneity(std::span<const std::int64_t> first, std::span<const std::int64_t> second);

/// 99.9% critical values for df = 2^n - 1, n = 1..6.
double chi_squared_critical_999(int degrees_of_freedom);

/// 1/2 sum |p - q|.
double total_variation_distance(const OutcomeDistribution& p, const OutcomeDistribution& q);

}  // namespace spinsim
