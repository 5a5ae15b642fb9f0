#include "spinsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

namespace spinsim {

void RoundStatistics::record(const ProtocolRound& round) {
    const std::int64_t product4 = std::int64_t{round.alpha_doubled} * round.beta_doubled;
    ++rounds;
    sum_alpha2 += round.alpha_doubled;
    sum_beta2 += round.beta_doubled;
    sum_product4 += product4;
    sum_product4_sq += product4 * product4;
    total_bits += round.bits_sent;
    const int row = two_s.outcome_index(round.alpha_doubled);
    const int col = two_s.outcome_index(round.beta_doubled);
    ++joint_counts[static_cast<std::size_t>(row) * two_s.dim() + col];
}

void RoundStatistics::merge(const RoundStatistics& other) {
    if (other.two_s != two_s) throw std::invalid_argument("cannot merge statistics for different spins");
    rounds += other.rounds;
    sum_alpha2 += other.sum_alpha2;
    sum_beta2 += other.sum_beta2;
    sum_product4 += other.sum_product4;
    sum_product4_sq += other.sum_product4_sq;
    total_bits += other.total_bits;
    for (std::size_t i = 0; i < joint_counts.size(); ++i) joint_counts[i] += other.joint_counts[i];
}

std::vector<std::int64_t> RoundStatistics::alice_counts() const {
    const int d = two_s.dim();
    std::vector<std::int64_t> out(d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out[i] += joint_counts[static_cast<std::size_t>(i) * d + j];
    return out;
}

std::vector<std::int64_t> RoundStatistics::bob_counts() const {
    const int d = two_s.dim();
    std::vector<std::int64_t> out(d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out[j] += joint_counts[static_cast<std::size_t>(i) * d + j];
    return out;
}

RoundStatistics accumulate_rounds(const EstimatorConfig& config, std::int64_t first, std::int64_t last) {
    require_protocol_eligible(config.two_s);
    RoundStatistics stats(config.two_s);
    for (std::int64_t r = first; r < last; ++r) {
        CounterRng rng(config.master_seed, static_cast<std::uint64_t>(r));
        stats.record(run_round(config.two_s, config.a, config.b, rng));
    }
    return stats;
}

namespace {

void validate(const EstimatorConfig& config) {
    require_protocol_eligible(config.two_s);
    if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (config.workers < 1) throw std::invalid_argument("workers must be at least 1");
}

}  // namespace

SimulationReport estimate(const EstimatorConfig& config) {
    validate(config);
    const auto workers = static_cast<std::int64_t>(std::min<std::int64_t>(config.workers, config.trials));
    std::vector<RoundStatistics> partials(workers, RoundStatistics(config.two_s));
    if (workers == 1) {
        partials[0] = accumulate_rounds(config, 0, config.trials);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::int64_t w = 0; w < workers; ++w) {
            const std::int64_t first = config.trials * w / workers;
            const std::int64_t last = config.trials * (w + 1) / workers;
            threads.emplace_back([&, w, first, last] {
                try {
                    partials[w] = accumulate_rounds(config, first, last);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    RoundStatistics total(config.two_s);
    for (const auto& p : partials) total.merge(p);
    return make_report(config, total);
}

SimulationReport make_report(const EstimatorConfig& config, const RoundStatistics& stats) {
    validate(config);
    if (stats.rounds < 1) throw std::invalid_argument("no rounds accumulated");
    const TwoSpin two_s = config.two_s;
    const double n_rounds = static_cast<double>(stats.rounds);

    SimulationReport report;
    report.config = config;
    report.corr_estimate = static_cast<double>(stats.sum_product4) / (4.0 * n_rounds);
    if (stats.rounds > 1) {
        // Exact (N * sum x^2 - (sum x)^2) / (N (N - 1)) on x = 4 alpha beta.
        const __int128 n = stats.rounds;
        const __int128 centred = n * static_cast<__int128>(stats.sum_product4_sq) -
                                 static_cast<__int128>(stats.sum_product4) * stats.sum_product4;
        const double variance4 = static_cast<double>(centred) / (n_rounds * (n_rounds - 1.0));
        report.corr_stderr = std::sqrt(variance4) / 4.0 / std::sqrt(n_rounds);
    }
    report.corr_quantum = quantum_correlation_closed_form(two_s, config.a, config.b);
    report.mean_alpha = static_cast<double>(stats.sum_alpha2) / (2.0 * n_rounds);
    report.mean_beta = static_cast<double>(stats.sum_beta2) / (2.0 * n_rounds);

    report.joint_empirical = OutcomeDistribution::from_counts(two_s, stats.joint_counts);
    report.joint_quantum = quantum_joint_distribution(two_s, config.a, config.b);
    report.marginal_alpha = report.joint_empirical.alice_marginal();
    report.marginal_beta = report.joint_empirical.bob_marginal();
    report.tvd = total_variation_distance(report.joint_empirical, report.joint_quantum);

    const auto alice = stats.alice_counts();
    const auto bob = stats.bob_counts();
    const bool enough = stats.rounds >= 10 * static_cast<std::int64_t>(two_s.dim());
    report.chi2_alpha = enough ? chi_squared_uniform(alice) : std::numeric_limits<double>::quiet_NaN();
    report.chi2_beta = enough ? chi_squared_uniform(bob) : std::numeric_limits<double>::quiet_NaN();

    report.bits_per_round = two_s.cbits();
    report.total_bits = stats.total_bits;
    return report;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line needs >= 2 paired points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: abscissae are all equal");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

SweepResult sweep(TwoSpin two_s, std::int64_t trials_per_point, int points, std::uint64_t master_seed,
                  int workers) {
    if (points < 2) throw std::invalid_argument("sweep needs at least 2 points");
    require_protocol_eligible(two_s);
    SweepResult out;
    out.two_s = two_s;
    std::vector<double> cosines;
    std::vector<double> estimates;
    for (int p = 0; p < points; ++p) {
        const double theta = std::numbers::pi * p / (points - 1);
        EstimatorConfig config;
        config.two_s = two_s;
        config.a = UnitVector3::z_axis();
        config.b = UnitVector3::from_polar_xz(theta);
        config.trials = trials_per_point;
        config.master_seed = mix64(master_seed + static_cast<std::uint64_t>(p));
        config.workers = workers;
        out.thetas.push_back(theta);
        out.reports.push_back(estimate(config));
        cosines.push_back(std::cos(theta));
        estimates.push_back(out.reports.back().corr_estimate);
    }
    out.fit = fit_line(cosines, estimates);
    return out;
}

double chi_squared_uniform(std::span<const std::int64_t> histogram) {
    if (histogram.empty()) throw std::invalid_argument("chi_squared_uniform: empty histogram");
    const std::int64_t total = std::accumulate(histogram.begin(), histogram.end(), std::int64_t{0});
    const auto bins = static_cast<std::int64_t>(histogram.size());
    if (total < 10 * bins) {
        throw std::invalid_argument("chi_squared_uniform: sample too small (need at least 10 counts per bin)");
    }
    const double expected = static_cast<double>(total) / static_cast<double>(bins);
    double stat = 0.0;
    for (const auto count : histogram) {
        const double diff = static_cast<double>(count) - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

double chi_squared_homogeneity(std::span<const std::int64_t> first, std::span<const std::int64_t> second) {
    if (first.size() != second.size() || first.empty()) {
        throw std::invalid_argument("chi_squared_homogeneity: histograms must have equal, nonzero length");
    }
    const double n1 = static_cast<double>(std::accumulate(first.begin(), first.end(), std::int64_t{0}));
    const double n2 = static_cast<double>(std::accumulate(second.begin(), second.end(), std::int64_t{0}));
    if (n1 <= 0.0 || n2 <= 0.0) throw std::invalid_argument("chi_squared_homogeneity: empty sample");
    double stat = 0.0;
    for (std::size_t i = 0; i < first.size(); ++i) {
        const double pooled = static_cast<double>(first[i] + second[i]);
        if (pooled == 0.0) continue;
        const double e1 = pooled * n1 / (n1 + n2);
        const double e2 = pooled * n2 / (n1 + n2);
        stat += (first[i] - e1) * (first[i] - e1) / e1 + (second[i] - e2) * (second[i] - e2) / e2;
    }
    return stat;
}

double chi_squared_critical_999(int degrees_of_freedom) {
    switch (degrees_of_freedom) {
        case 1: return 10.827566170662733;
        case 3: return 16.26623619623813;
        case 7: return 24.321886347856854;
        case 15: return 37.69729821835383;
        case 31: return 61.098306081058126;
        case 63: return 103.44237731987324;
        default:
            throw std::invalid_argument("no tabulated 99.9% chi-squared value for df = " +
                                        std::to_string(degrees_of_freedom));
    }
}

double total_variation_distance(const OutcomeDistribution& p, const OutcomeDistribution& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("total_variation_distance: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.probs().size(); ++i) acc += std::abs(p.probs()[i] - q.probs()[i]);
    return 0.5 * acc;
}

}  // namespace spinsim
