#include "spinsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "spinsim/report.hpp"

namespace spinsim {

namespace {

template <typename... Args>
std::string format(const char* pattern, Args... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

struct Recorder {
    std::string module;
    std::string spin;
    std::vector<CheckResult> results;

    void add(const std::string& name, bool passed, std::string detail) {
        results.push_back({module, name, spin, passed, std::move(detail)});
    }
};

}  // namespace

UnitVector3 rotate(const UnitVector3& v, const UnitVector3& axis, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double kv = axis.dot(v);
    const double cx = axis.y() * v.z() - axis.z() * v.y();
    const double cy = axis.z() * v.x() - axis.x() * v.z();
    const double cz = axis.x() * v.y() - axis.y() * v.x();
    return UnitVector3::normalized(v.x() * c + cx * s + axis.x() * kv * (1.0 - c),
                                   v.y() * c + cy * s + axis.y() * kv * (1.0 - c),
                                   v.z() * c + cz * s + axis.z() * kv * (1.0 - c));
}

VerifyOptions VerifyOptions::defaults() {
    VerifyOptions o;
    o.protocol_spins = {TwoSpin(1), TwoSpin(3), TwoSpin(7)};
    o.oracle_spins = {TwoSpin(1), TwoSpin(2), TwoSpin(3), TwoSpin(7), TwoSpin(15)};
    return o;
}

VerifyOptions VerifyOptions::for_spins(const std::vector<TwoSpin>& spins) {
    VerifyOptions o;
    for (const TwoSpin s : spins) {
        if (std::find(o.oracle_spins.begin(), o.oracle_spins.end(), s) != o.oracle_spins.end()) continue;
        o.oracle_spins.push_back(s);
        if (s.protocol_eligible() && s.cbits() <= kMaxCbits) o.protocol_spins.push_back(s);
    }
    return o;
}

std::vector<CheckResult> verify_oracle(TwoSpin two_s, std::uint64_t seed) {
    Recorder rec{"oracle", two_s.to_string(), {}};
    const SpinOperators ops = build_spin_operators(two_s);
    const double s = two_s.spin();
    const Complex i_unit(0.0, 1.0);

    const double closure = std::max({max_abs(commutator(ops.jx, ops.jy) - i_unit * ops.jz),
                                     max_abs(commutator(ops.jy, ops.jz) - i_unit * ops.jx),
                                     max_abs(commutator(ops.jz, ops.jx) - i_unit * ops.jy)});
    rec.add("su2_closure", closure <= 1e-12, format("max defect %.3g (tol 1e-12)", closure));

    const ComplexMatrix casimir = ops.jx * ops.jx + ops.jy * ops.jy + ops.jz * ops.jz;
    const double casimir_defect =
        max_abs(casimir - ComplexMatrix::identity(two_s.dim()) * Complex(s * (s + 1.0)));
    rec.add("casimir", casimir_defect <= 1e-12, format("max defect %.3g (tol 1e-12)", casimir_defect));

    const double herm = std::max({hermiticity_defect(ops.jx), hermiticity_defect(ops.jy), hermiticity_defect(ops.jz)});
    rec.add("hermitian", herm <= 1e-12, format("max defect %.3g (tol 1e-12)", herm));

    CounterRng rng(seed, 0x0AC1E000u + static_cast<std::uint64_t>(two_s.two_s()));

    double spectrum_err = 0.0;
    double ortho_err = 0.0;
    double recon_err = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const UnitVector3 a = sample_unit_vector(rng);
        const ComplexMatrix m = spin_component(ops, a);
        const Spectrum sp = spin_component_spectrum(ops, a);
        for (int i = 0; i < two_s.dim(); ++i) spectrum_err = std::max(spectrum_err, std::abs(sp.eigenvalues[i] - (s - i)));
        ortho_err = std::max(ortho_err, orthonormality_defect(sp.vectors));
        recon_err = std::max(recon_err, reconstruction_error(sp, m));
    }
    rec.add("spectrum", spectrum_err <= 1e-10 && ortho_err <= 1e-10 && recon_err <= 1e-9,
            format("100 directions: eigenvalue err %.3g, orthonormality %.3g, reconstruction %.3g", spectrum_err,
                   ortho_err, recon_err));

    const StateVector psi = build_singlet(two_s);
    const double norm_err = std::abs(norm(psi) - 1.0);
    double annihilation = 0.0;
    const ComplexMatrix id = ComplexMatrix::identity(two_s.dim());
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix aj = spin_component(ops, sample_unit_vector(rng));
        const ComplexMatrix total = kron(aj, id) + kron(id, aj);
        annihilation = std::max(annihilation, norm(multiply(total, psi)));
    }
    rec.add("singlet", norm_err <= 1e-12 && annihilation <= 1e-10,
            format("norm err %.3g (tol 1e-12), max |S_total psi| %.3g (tol 1e-10)", norm_err, annihilation));

    double pair_err = 0.0;
    double marginal_err = 0.0;
    for (int p = 0; p < 19; ++p) {
        const double theta = std::numbers::pi * p / 18.0;
        const UnitVector3 a = UnitVector3::z_axis();
        const UnitVector3 b = UnitVector3::from_polar_xz(theta);
        const double closed = quantum_correlation_closed_form(two_s, a, b);
        const double matrix = quantum_correlation_matrix(two_s, a, b);
        const OutcomeDistribution joint = quantum_joint_distribution(two_s, a, b);
        const double dist = joint.correlation();
        pair_err = std::max({pair_err, std::abs(closed - matrix), std::abs(closed - dist), std::abs(matrix - dist)});
        const double uniform = 1.0 / two_s.dim();
        for (double x : joint.alice_marginal()) marginal_err = std::max(marginal_err, std::abs(x - uniform));
        for (double x : joint.bob_marginal()) marginal_err = std::max(marginal_err, std::abs(x - uniform));
    }
    rec.add("correlation_routes_agree", pair_err <= 1e-8,
            format("19-point theta grid: max pairwise diff %.3g (tol 1e-8)", pair_err));
    rec.add("uniform_marginals", marginal_err <= 1e-9, format("max deviation %.3g (tol 1e-9)", marginal_err));

    double covariance = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const UnitVector3 a = sample_unit_vector(rng);
        const UnitVector3 b = sample_unit_vector(rng);
        const UnitVector3 axis = sample_unit_vector(rng);
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        const OutcomeDistribution p = quantum_joint_distribution(two_s, a, b);
        const OutcomeDistribution q = quantum_joint_distribution(two_s, rotate(a, axis, angle), rotate(b, axis, angle));
        for (std::size_t k = 0; k < p.probs().size(); ++k)
            covariance = std::max(covariance, std::abs(p.probs()[k] - q.probs()[k]));
    }
    rec.add("rotational_covariance", covariance <= 1e-8, format("max cell diff %.3g (tol 1e-8)", covariance));
    return rec.results;
}

std::vector<CheckResult> verify_protocol(TwoSpin two_s, std::int64_t trials, std::uint64_t seed, int workers) {
    Recorder rec{"protocol", two_s.to_string(), {}};
    const int n = require_protocol_eligible(two_s);
    const int d = two_s.dim();
    const double crit = chi_squared_critical_999(d - 1);
    CounterRng dir_rng(seed, 0xD1EC7000u + static_cast<std::uint64_t>(two_s.two_s()));
    const UnitVector3 a = sample_unit_vector(dir_rng);
    const UnitVector3 b = sample_unit_vector(dir_rng);
    const UnitVector3 a_other = sample_unit_vector(dir_rng);

    EstimatorConfig config;
    config.two_s = two_s;
    config.a = a;
    config.b = b;
    config.trials = trials;
    config.master_seed = mix64(seed ^ 0x1111);
    config.workers = workers;
    const SimulationReport base = estimate(config);

    rec.add("bits_per_round", base.bits_per_round == n && base.total_bits == trials * n,
            format("%d cbits per round, %lld total over %lld rounds", base.bits_per_round,
                   static_cast<long long>(base.total_bits), static_cast<long long>(trials)));
    rec.add("uniform_alpha", base.chi2_alpha < crit, format("chi2 %.3f < %.3f (df %d)", base.chi2_alpha, crit, d - 1));
    rec.add("uniform_beta", base.chi2_beta < crit, format("chi2 %.3f < %.3f (df %d)", base.chi2_beta, crit, d - 1));
    const double corr_dev = std::abs(base.corr_estimate - base.corr_quantum);
    rec.add("correlation", corr_dev <= 5.0 * base.corr_stderr + 1e-12,
            format("estimate %.5f vs %.5f, |diff| %.2g <= 5 x %.2g", base.corr_estimate, base.corr_quantum, corr_dev,
                   base.corr_stderr));

    // Bob's marginal under a different Alice setting, independent rounds.
    EstimatorConfig other = config;
    other.a = a_other;
    other.master_seed = mix64(seed ^ 0x2222);
    {
        const RoundStatistics s1 = accumulate_rounds(config, 0, trials);
        const RoundStatistics s2 = accumulate_rounds(other, 0, trials);
        const double stat = chi_squared_homogeneity(s1.bob_counts(), s2.bob_counts());
        rec.add("no_signalling", stat < crit, format("homogeneity chi2 %.3f < %.3f (df %d)", stat, crit, d - 1));
    }

    // Per-round traces: range, message privacy, cross terms.
    {
        std::vector<std::int64_t> c_count(2 * n, 0);       // [k][c == +1]
        std::vector<std::int64_t> f_plus_given_c(2 * n, 0);  // sgn(a.lambda_k) = +1 given c_k
        std::vector<double> cross(n * n, 0.0);
        bool range_ok = true;
        const std::uint64_t trace_seed = mix64(seed ^ 0x3333);
        for (std::int64_t r = 0; r < trials; ++r) {
            CounterRng rng(trace_seed, static_cast<std::uint64_t>(r));
            const ProtocolRound round = run_round(two_s, a, b, rng);
            range_ok = range_ok && (round.alpha_doubled % 2 != 0) && (round.beta_doubled % 2 != 0) &&
                       std::abs(round.alpha_doubled) <= two_s.two_s() && std::abs(round.beta_doubled) <= two_s.two_s() &&
                       round.bits_sent == n;
            int f[kMaxCbits];
            int g[kMaxCbits];
            for (int k = 0; k < n; ++k) {
                f[k] = sgn(a.dot(round.randomness.lambdas()[k]));
                g[k] = bob_bit(b, round.randomness.lambdas()[k], round.randomness.mus()[k], round.messages[k]);
                const int slot = 2 * k + (round.messages[k] == 1 ? 1 : 0);
                ++c_count[slot];
                if (f[k] == 1) ++f_plus_given_c[slot];
            }
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) cross[k * n + l] += f[k] * g[l];
        }
        rec.add("output_range", range_ok, "2alpha, 2beta odd in [-2s, 2s], n bits every round");

        double worst_z = 0.0;
        for (int slot = 0; slot < 2 * n; ++slot) {
            const double count = static_cast<double>(c_count[slot]);
            if (count == 0) continue;
            const double p = f_plus_given_c[slot] / count;
            worst_z = std::max(worst_z, std::abs(p - 0.5) / std::sqrt(0.25 / count));
        }
        rec.add("message_privacy", worst_z <= 5.0, format("max |P(f=+1|c) - 1/2| = %.2f sigma (tol 5)", worst_z));

        if (n >= 2) {
            double worst = 0.0;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    if (k == l) continue;
                    const double mean = cross[k * n + l] / trials;
                    const double sigma = std::sqrt(std::max(1e-300, 1.0 - mean * mean) / trials);
                    worst = std::max(worst, std::abs(mean) / sigma);
                }
            rec.add("cross_terms_vanish", worst <= 5.0, format("max |E[f_k g_l]|, k != l: %.2f sigma (tol 5)", worst));
        }
    }

    {
        bool all_anti = true;
        std::int64_t violations = 0;
        const std::uint64_t anti_seed = mix64(seed ^ 0x4444);
        for (std::int64_t r = 0; r < trials; ++r) {
            CounterRng rng(anti_seed, static_cast<std::uint64_t>(r));
            const ProtocolRound round = run_round(two_s, a, a, rng);
            if (round.beta_doubled != -round.alpha_doubled) {
                all_anti = false;
                ++violations;
            }
        }
        rec.add("perfect_anticorrelation", all_anti,
                format("b = a: %lld of %lld rounds violate beta = -alpha", static_cast<long long>(violations),
                       static_cast<long long>(trials)));
    }

    {
        EstimatorConfig det = config;
        det.trials = std::max<std::int64_t>(1000, trials / 10);
        det.workers = 1;
        const SimulationReport r1 = estimate(det);
        const SimulationReport r2 = estimate(det);
        det.workers = 3;
        SimulationReport r3 = estimate(det);
        r3.config.workers = 1;
        const bool same = dump(to_json(r1)) == dump(to_json(r2)) && dump(to_json(r1)) == dump(to_json(r3));
        rec.add("determinism", same, "repeat run and 3-worker run produce identical reports");
    }
    return rec.results;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    std::vector<CheckResult> out;
    for (const TwoSpin s : options.oracle_spins) {
        auto r = verify_oracle(s, options.seed);
        out.insert(out.end(), r.begin(), r.end());
    }
    for (const TwoSpin s : options.protocol_spins) {
        auto r = verify_protocol(s, options.trials, options.seed, options.workers);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

bool print_results(std::ostream& out, const std::vector<CheckResult>& results) {
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        out << format("[%s] %-9s %-5s %-26s %s\n", r.passed ? "PASS" : "FAIL", r.module.c_str(), r.spin.c_str(),
                      r.name.c_str(), r.detail.c_str());
    }
    const auto failed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.passed; });
    out << format("%zu checks, %ld failed\n", results.size(), static_cast<long>(failed));
    return all;
}

}  // namespace spinsim
